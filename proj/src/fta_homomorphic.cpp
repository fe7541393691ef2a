#include <algorithm>
#include <map>

#include "bimorph/error.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/hom.hpp"

namespace bimorph {

namespace {

// Adds rules recognising the pattern `p` (over the target signature and
// x1..xk) at state `at`, with x_i read from `vars[i-1]`.
void add_pattern(Fta& out, const Tree& p, State at, const std::vector<State>& vars, std::vector<FtaRule>& rules)
{
    std::vector<State> kids;
    for (const Tree& c : p.children()) {
        if (c.is_variable()) {
            kids.push_back(vars[c.var_index() - 1]);
            continue;
        }
        State s = out.add_state();
        add_pattern(out, c, s, vars, rules);
        kids.push_back(s);
    }
    rules.push_back({at, p.name(), std::move(kids)});
}

} // namespace

Fta image(const Fta& input, const TreeHom& phi)
{
    if (!classify(phi).linear)
        throw Error(ErrorKind::nonlinear_hom, "image of a recognizable language needs a linear homomorphism");
    input.signature().merged(phi.source());
    const Fta a = trim(input);
    Fta out(phi.target());
    for (State q = 0; q < a.state_count(); ++q) {
        out.add_state(a.state_label(q));
        out.set_final(q, a.is_final(q));
    }
    std::vector<FtaRule> rules;
    std::vector<std::vector<State>> eps(a.state_count());
    for (const FtaRule& r : a.rules()) {
        const Tree& p = phi.image_of(r.symbol);
        if (p.is_variable())
            eps[r.target].push_back(r.children[p.var_index() - 1]);
        else
            add_pattern(out, p, r.target, r.children, rules);
    }

    std::vector<std::vector<std::size_t>> by_target(out.state_count());
    for (std::size_t i = 0; i < rules.size(); ++i)
        by_target[rules[i].target].push_back(i);
    for (const FtaRule& r : rules)
        out.add_rule(r.target, r.symbol, r.children);
    for (State q = 0; q < a.state_count(); ++q) {
        std::vector<char> seen(a.state_count(), 0);
        std::vector<State> stack = eps[q];
        seen[q] = 1;
        while (!stack.empty()) {
            State p = stack.back();
            stack.pop_back();
            if (seen[p])
                continue;
            seen[p] = 1;
            for (std::size_t i : by_target[p])
                out.add_rule(q, rules[i].symbol, rules[i].children);
            stack.insert(stack.end(), eps[p].begin(), eps[p].end());
        }
    }
    return trim(out);
}

namespace {

using StateSet = std::vector<char>;

StateSet eval_pattern(const Fta& a, const Tree& p, const std::vector<const StateSet*>& vars)
{
    if (p.is_variable())
        return *vars[p.var_index() - 1];
    std::vector<StateSet> kids;
    kids.reserve(p.rank());
    for (const Tree& c : p.children())
        kids.push_back(eval_pattern(a, c, vars));
    StateSet out(a.state_count(), 0);
    for (std::size_t r : a.rules_for(p.name())) {
        const FtaRule& rule = a.rules()[r];
        if (rule.children.size() != p.rank())
            continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < kids.size(); ++i)
            ok = kids[i][rule.children[i]] != 0;
        if (ok)
            out[rule.target] = 1;
    }
    return out;
}

} // namespace

Fta preimage_hom(const Fta& input, const TreeHom& phi)
{
    phi.require_total();
    input.signature().merged(phi.target());
    const Fta a = trim(input);
    Fta out(phi.source());
    std::vector<StateSet> subsets;
    std::map<StateSet, State> index;

    auto state_of = [&](StateSet s) {
        auto it = index.find(s);
        if (it != index.end())
            return it->second;
        std::string label = "{";
        bool final = false;
        for (State q = 0; q < s.size(); ++q)
            if (s[q]) {
                if (label.size() > 1)
                    label += ',';
                label += a.state_label(q);
                final = final || a.is_final(q);
            }
        label += '}';
        State id = out.add_state(label);
        out.set_final(id, final);
        subsets.push_back(s);
        index.emplace(std::move(s), id);
        return id;
    };

    for (Name v : phi.source().leaves.names())
        out.add_rule(state_of(eval_pattern(a, phi.image_of(v), {})), v);
    for (Name f : phi.source().ranked.symbols_of_rank(0))
        out.add_rule(state_of(eval_pattern(a, phi.image_of(f), {})), f);

    // Semi-naive saturation: each round only visits tuples touching a
    // subset discovered in the previous round.
    std::size_t processed = 0;
    while (processed < subsets.size()) {
        const std::size_t current = subsets.size();
        for (const auto& [f, k] : phi.source().ranked.symbols()) {
            if (k == 0)
                continue;
            const Tree& p = phi.image_of(f);
            std::vector<std::size_t> idx(k, 0);
            for (bool more = true; more;) {
                if (std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= processed; })) {
                    std::vector<const StateSet*> vars;
                    for (std::size_t i : idx)
                        vars.push_back(&subsets[i]);
                    StateSet target = eval_pattern(a, p, vars);
                    std::vector<State> kids(idx.begin(), idx.end());
                    out.add_rule(state_of(std::move(target)), f, std::move(kids));
                }
                more = false;
                for (std::size_t j = k; j-- > 0;) {
                    if (++idx[j] < current) {
                        more = true;
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        processed = current;
    }
    return trim(out);
}

} // namespace bimorph
