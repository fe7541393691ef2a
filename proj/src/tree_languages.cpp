#include "bimorph/fta.hpp"

namespace bimorph {

namespace {

// Calls fn on every tuple (p[0][i0], ..., p[k-1][ik-1]).
template <class Fn>
void for_each_tuple(const std::vector<std::vector<Tree>>& pools, Fn&& fn)
{
    for (const auto& p : pools)
        if (p.empty())
            return;
    std::vector<std::size_t> idx(pools.size(), 0);
    std::vector<Tree> tuple;
    for (;;) {
        tuple.clear();
        for (std::size_t j = 0; j < pools.size(); ++j)
            tuple.push_back(pools[j][idx[j]]);
        fn(tuple);
        std::size_t j = pools.size();
        for (;;) {
            if (j == 0)
                return;
            --j;
            if (++idx[j] < pools[j].size())
                break;
            idx[j] = 0;
        }
    }
}

} // namespace

TreeSet lang_top_catenation(Name f, const std::vector<TreeSet>& ls)
{
    std::vector<std::vector<Tree>> pools;
    for (const auto& l : ls)
        pools.emplace_back(l.begin(), l.end());
    TreeSet out;
    for_each_tuple(pools, [&](const std::vector<Tree>& kids) { out.insert(Tree::node(f, kids)); });
    return out;
}

TreeSet lang_v_product(const TreeSet& l, const TreeSet& l2, Name v)
{
    TreeSet out;
    const std::vector<Tree> choices(l2.begin(), l2.end());
    for (const Tree& t : l) {
        std::size_t n = yield(t, LeafAlphabet{v}).size();
        std::vector<std::vector<Tree>> pools(n, choices);
        for_each_tuple(pools, [&](const std::vector<Tree>& ts) { out.insert(substitute_leaf(t, v, ts)); });
    }
    return out;
}

TreeSet lang_v_quotient(const TreeSet& l, const TreeSet& l2, const TreeSet& candidates, Name v)
{
    TreeSet out;
    for (const Tree& t : candidates) {
        TreeSet product = lang_v_product(TreeSet{t}, l2, v);
        for (const Tree& u : product)
            if (l.count(u)) {
                out.insert(t);
                break;
            }
    }
    return out;
}

} // namespace bimorph
