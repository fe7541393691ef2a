#include "bimorph/bimorphism.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "bimorph/error.hpp"
#include "parallel.hpp"

namespace bimorph {

void Bimorphism::validate() const
{
    if (!(phi.source() == psi.source()))
        throw Error(ErrorKind::alphabet_mismatch, "phi and psi have different source alphabets");
    phi.source().merged(center.signature());
    for (const auto& [f, k] : center.signature().ranked.symbols())
        if (!phi.source().ranked.contains(f))
            throw Error(ErrorKind::alphabet_mismatch, "center symbol '" + std::string(f.str()) + "' is not mapped");
    for (Name z : center.signature().leaves.names())
        if (!phi.source().leaves.contains(z))
            throw Error(ErrorKind::alphabet_mismatch, "center leaf '" + std::string(z.str()) + "' is not mapped");
    phi.require_total();
    psi.require_total();
}

bool Bimorphism::quasi_alphabetic() const
{
    return classify(phi).quasi_alphabetic && classify(psi).quasi_alphabetic;
}

Relation relation(const Bimorphism& b, std::size_t h)
{
    b.validate();
    TreeSet centers = enumerate(b.center, h);
    std::vector<Tree> trees(centers.begin(), centers.end());
    std::vector<std::optional<TreePair>> pairs(trees.size());
    detail::parallel_for(trees.size(), [&](std::size_t i) { pairs[i].emplace(b.phi.apply(trees[i]), b.psi.apply(trees[i])); });
    Relation out;
    for (auto& p : pairs)
        out.insert(std::move(*p));
    return out;
}

Relation relation_serial(const Bimorphism& b, std::size_t h)
{
    b.validate();
    Relation out;
    for (const Tree& t : enumerate_serial(b.center, h))
        out.emplace(b.phi.apply(t), b.psi.apply(t));
    return out;
}

namespace {

// yd(phi_k(f)) over the target leaves and the variables: a variable slot
// holds its index (>= 1), a leaf slot 0 with the leaf kept in `leaves`.
struct YieldTemplate {
    std::vector<unsigned> slots;
    std::vector<Name> leaves;

    Word fill(const std::vector<const Word*>& parts) const
    {
        Word out;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i] == 0)
                out.push_back(leaves[i]);
            else
                out.insert(out.end(), parts[slots[i] - 1]->begin(), parts[slots[i] - 1]->end());
        }
        return out;
    }
};

void collect_template(const Tree& t, const LeafAlphabet& y, YieldTemplate& out)
{
    if (t.is_variable()) {
        out.slots.push_back(t.var_index());
        out.leaves.emplace_back();
        return;
    }
    if (t.is_leaf()) {
        if (y.contains(t.name())) {
            out.slots.push_back(0);
            out.leaves.push_back(t.name());
        }
        return;
    }
    for (const Tree& c : t.children())
        collect_template(c, y, out);
}

YieldTemplate make_template(const Tree& t, const LeafAlphabet& y)
{
    YieldTemplate out;
    collect_template(t, y, out);
    return out;
}

} // namespace

Translation translation(const Bimorphism& b, std::size_t h)
{
    b.validate();
    const Fta a = trim(b.center);
    const std::size_t n = a.state_count();

    std::vector<std::pair<YieldTemplate, YieldTemplate>> templates;
    for (const FtaRule& r : a.rules())
        templates.emplace_back(make_template(b.phi.image_of(r.symbol), b.phi.target().leaves),
                               make_template(b.psi.image_of(r.symbol), b.psi.target().leaves));

    // Same height-level scheme as enumerate(), on yield pairs: per state,
    // pairs reachable at each exact height, deduplicated against all lower
    // heights since a yield pair is all that matters.
    std::vector<std::vector<WordPair>> items(n);
    std::vector<std::set<WordPair>> seen(n);
    std::vector<std::vector<std::size_t>> level_start(1, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
        const FtaRule& r = a.rules()[i];
        if (!r.children.empty())
            continue;
        WordPair p{templates[i].first.fill({}), templates[i].second.fill({})};
        if (seen[r.target].insert(p).second)
            items[r.target].push_back(std::move(p));
    }
    auto close_level = [&] {
        std::vector<std::size_t> ends(n);
        for (State q = 0; q < n; ++q)
            ends[q] = items[q].size();
        level_start.push_back(std::move(ends));
    };
    close_level();

    // A pair first reached at height d can only feed pairs at heights > d,
    // so tuples are split on the first child whose pair is new at d-1.
    for (std::size_t d = 1; d <= h; ++d) {
        bool grew = false;
        std::vector<std::vector<std::pair<State, WordPair>>> produced(a.rules().size());
        detail::parallel_for(a.rules().size(), [&](std::size_t i) {
            const FtaRule& r = a.rules()[i];
            const std::size_t k = r.children.size();
            for (std::size_t split = 0; split < k; ++split) {
                std::vector<std::pair<std::size_t, std::size_t>> ranges(k);
                bool empty = false;
                for (std::size_t j = 0; j < k; ++j) {
                    State c = r.children[j];
                    std::size_t below = level_start[d - 1][c], upto = level_start[d][c];
                    ranges[j] = {j == split ? below : 0, j < split ? below : upto};
                    empty = empty || ranges[j].first == ranges[j].second;
                }
                if (empty)
                    continue;
                std::vector<std::size_t> idx(k);
                for (std::size_t j = 0; j < k; ++j)
                    idx[j] = ranges[j].first;
                for (bool more = true; more;) {
                    std::vector<const Word*> left(k), right(k);
                    for (std::size_t j = 0; j < k; ++j) {
                        left[j] = &items[r.children[j]][idx[j]].first;
                        right[j] = &items[r.children[j]][idx[j]].second;
                    }
                    produced[i].emplace_back(r.target, WordPair{templates[i].first.fill(left), templates[i].second.fill(right)});
                    more = false;
                    for (std::size_t j = k; j-- > 0;) {
                        if (++idx[j] < ranges[j].second) {
                            more = true;
                            break;
                        }
                        idx[j] = ranges[j].first;
                    }
                }
            }
        });
        for (auto& batch : produced)
            for (auto& [q, p] : batch)
                if (seen[q].insert(p).second) {
                    items[q].push_back(std::move(p));
                    grew = true;
                }
        close_level();
        if (!grew)
            break;
    }

    Translation out;
    for (State q : a.final_states())
        out.insert(items[q].begin(), items[q].end());
    return out;
}

Translation translation_by_enumeration(const Bimorphism& b, std::size_t h)
{
    Translation out;
    for (const auto& [s, t] : relation(b, h))
        out.emplace(yield(s, b.phi.target().leaves), yield(t, b.psi.target().leaves));
    return out;
}

Fta apply(const Bimorphism& b, const Tree& s)
{
    b.validate();
    if (!classify(b.phi).linear)
        throw Error(ErrorKind::class_mismatch, "apply needs a linear input homomorphism");
    Fta source = singleton_fta(s, b.phi.target());
    Fta pre = preimage_hom(source, b.phi);
    return image(language_intersection(pre, b.center), b.psi);
}

Bimorphism invert(const Bimorphism& b)
{
    return {b.psi, b.center, b.phi};
}

} // namespace bimorph
