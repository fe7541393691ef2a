#include <algorithm>
#include <span>

#include "bimorph/fta.hpp"
#include "parallel.hpp"

namespace bimorph {

namespace {

// Trees accepted from each state, in order of height. level_start[d][q] is
// the index in by_state[q] where trees of exact height d begin.
struct Levels {
    std::vector<std::vector<Tree>> by_state;
    std::vector<std::vector<std::size_t>> level_start;

    std::span<const Tree> range(State q, std::size_t from, std::size_t to) const
    {
        return std::span<const Tree>(by_state[q]).subspan(from, to - from);
    }
};

// Children j < split come from heights <= d-2, child `split` has height
// exactly d-1, children j > split have heights <= d-1. Every tuple with
// maximal child height d-1 is produced exactly once.
void expand(const FtaRule& rule, std::size_t split, std::size_t d, const Levels& lv, std::vector<Tree>& out)
{
    const std::size_t k = rule.children.size();
    std::vector<std::span<const Tree>> pools(k);
    for (std::size_t j = 0; j < k; ++j) {
        State c = rule.children[j];
        std::size_t below = lv.level_start[d - 1][c];
        std::size_t upto = lv.level_start[d][c];
        if (j < split)
            pools[j] = lv.range(c, 0, below);
        else if (j == split)
            pools[j] = lv.range(c, below, upto);
        else
            pools[j] = lv.range(c, 0, upto);
        if (pools[j].empty())
            return;
    }
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
        std::vector<Tree> kids;
        kids.reserve(k);
        for (std::size_t j = 0; j < k; ++j)
            kids.push_back(pools[j][idx[j]]);
        out.push_back(Tree::node(rule.symbol, std::move(kids)));
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++idx[j] < pools[j].size())
                break;
            idx[j] = 0;
            if (j == 0)
                return;
        }
    }
}

Tree nullary(const Fta& a, Name symbol)
{
    return a.signature().leaves.contains(symbol) ? Tree::leaf(symbol) : Tree::node(symbol);
}

} // namespace

TreeSet enumerate(const Fta& input, std::size_t h)
{
    const Fta a = trim(input);
    const std::size_t n = a.state_count();
    Levels lv;
    lv.by_state.assign(n, {});
    lv.level_start.assign(1, std::vector<std::size_t>(n, 0));

    {
        std::vector<TreeHashSet> seen(n);
        for (const FtaRule& r : a.rules())
            if (r.children.empty() && seen[r.target].insert(nullary(a, r.symbol)).second)
                lv.by_state[r.target].push_back(nullary(a, r.symbol));
    }
    auto close_level = [&] {
        std::vector<std::size_t> ends(n);
        for (State q = 0; q < n; ++q)
            ends[q] = lv.by_state[q].size();
        lv.level_start.push_back(std::move(ends));
    };
    close_level();

    struct Task {
        std::size_t rule;
        std::size_t split;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < a.rules().size(); ++r)
        for (std::size_t s = 0; s < a.rules()[r].children.size(); ++s)
            tasks.push_back({r, s});

    for (std::size_t d = 1; d <= h; ++d) {
        std::vector<std::vector<Tree>> produced(tasks.size());
        detail::parallel_for(tasks.size(), [&](std::size_t i) {
            expand(a.rules()[tasks[i].rule], tasks[i].split, d, lv, produced[i]);
        });
        std::vector<TreeHashSet> seen(n);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            State q = a.rules()[tasks[i].rule].target;
            for (Tree& t : produced[i])
                if (seen[q].insert(t).second)
                    lv.by_state[q].push_back(std::move(t));
        }
        close_level();
        if (std::all_of(seen.begin(), seen.end(), [](const TreeHashSet& s) { return s.empty(); }))
            break;
    }

    TreeSet out;
    for (State q : a.final_states())
        out.insert(lv.by_state[q].begin(), lv.by_state[q].end());
    return out;
}

TreeSet enumerate_serial(const Fta& a, std::size_t h)
{
    std::vector<TreeSet> cur(a.state_count());
    for (std::size_t round = 0; round <= h; ++round) {
        std::vector<TreeSet> next(a.state_count());
        for (const FtaRule& r : a.rules()) {
            if (r.children.empty()) {
                next[r.target].insert(nullary(a, r.symbol));
                continue;
            }
            std::vector<std::vector<Tree>> pools;
            for (State c : r.children)
                pools.emplace_back(cur[c].begin(), cur[c].end());
            if (std::any_of(pools.begin(), pools.end(), [](const auto& p) { return p.empty(); }))
                continue;
            std::vector<std::size_t> idx(pools.size(), 0);
            for (bool more = true; more;) {
                std::vector<Tree> kids;
                for (std::size_t j = 0; j < pools.size(); ++j)
                    kids.push_back(pools[j][idx[j]]);
                next[r.target].insert(Tree::node(r.symbol, std::move(kids)));
                more = false;
                for (std::size_t j = pools.size(); j-- > 0;) {
                    if (++idx[j] < pools[j].size()) {
                        more = true;
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        cur = std::move(next);
    }
    TreeSet out;
    for (State q : a.final_states())
        out.insert(cur[q].begin(), cur[q].end());
    return out;
}

} // namespace bimorph
