#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bimorph {

/// Interned symbol name. Equality is by id; ordering is by text so that
/// ordered containers print in a stable, human-readable order.
class Name {
public:
    Name() = default;
    Name(std::string_view text);
    Name(const char* text) : Name(std::string_view(text)) {}
    Name(const std::string& text) : Name(std::string_view(text)) {}

    std::string_view str() const noexcept;
    std::uint32_t id() const noexcept { return id_; }
    bool empty() const noexcept { return id_ == 0; }

    friend bool operator==(Name a, Name b) noexcept { return a.id_ == b.id_; }
    friend std::strong_ordering operator<=>(Name a, Name b) noexcept
    {
        if (a.id_ == b.id_)
            return std::strong_ordering::equal;
        return a.str().compare(b.str()) < 0 ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
    }

private:
    std::uint32_t id_ = 0;
};

std::ostream& operator<<(std::ostream& os, Name name);

} // namespace bimorph

template <>
struct std::hash<bimorph::Name> {
    std::size_t operator()(bimorph::Name n) const noexcept { return std::hash<std::uint32_t>{}(n.id()); }
};
