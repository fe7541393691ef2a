#include "bimorph/name.hpp"

#include <deque>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "bimorph/error.hpp"

namespace bimorph {

namespace {

class Interner {
public:
    Interner()
    {
        storage_.emplace_back();
        texts_.push_back(storage_.back());
        ids_.emplace(storage_.back(), 0);
    }

    std::uint32_t intern(std::string_view text)
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = ids_.find(text); it != ids_.end())
                return it->second;
        }
        std::unique_lock lock(mutex_);
        if (auto it = ids_.find(text); it != ids_.end())
            return it->second;
        storage_.emplace_back(text);
        auto id = static_cast<std::uint32_t>(texts_.size());
        texts_.push_back(storage_.back());
        ids_.emplace(storage_.back(), id);
        return id;
    }

    std::string_view text(std::uint32_t id) const
    {
        std::shared_lock lock(mutex_);
        return texts_[id];
    }

private:
    mutable std::shared_mutex mutex_;
    std::deque<std::string> storage_;
    std::vector<std::string_view> texts_;
    std::unordered_map<std::string_view, std::uint32_t> ids_;
};

Interner& interner()
{
    static Interner instance;
    return instance;
}

} // namespace

Name::Name(std::string_view text) : id_(interner().intern(text)) {}

std::string_view Name::str() const noexcept
{
    return interner().text(id_);
}

std::ostream& operator<<(std::ostream& os, Name name)
{
    return os << name.str();
}

std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_position: return "invalid-position";
    case ErrorKind::unbound_variable: return "unbound-variable";
    case ErrorKind::arity_mismatch: return "arity-mismatch";
    case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorKind::nonlinear_hom: return "nonlinear-hom";
    case ErrorKind::unmapped_symbol: return "unmapped-symbol";
    case ErrorKind::class_mismatch: return "class-mismatch";
    case ErrorKind::nontermination_suspected: return "nontermination-suspected";
    case ErrorKind::unsupported_shape: return "unsupported-shape";
    case ErrorKind::grammar_invalid: return "grammar-invalid";
    case ErrorKind::invalid_context: return "invalid-context";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
    }
    return "error";
}

} // namespace bimorph
