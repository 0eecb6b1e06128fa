#include "sclcert/linsys.hpp"

#include <algorithm>
#include <stdexcept>

namespace sclcert {

std::string rel_str(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Lt: return "<";
        case Rel::Eq: return "==";
    }
    return "?";
}

namespace {

// Working row: coeffs . x (<= | <) rhs, together with the nonnegative
// combination of input constraints that produced it.
struct Row {
    std::vector<Rat> coeffs;
    bool strict = false;
    Rat rhs;
    std::map<std::pair<std::size_t, bool>, Rat> combo;  // (input, negated) -> multiplier
};

bool all_zero(const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

bool violated(const Row& r) {
    if (!all_zero(r.coeffs)) return false;
    return r.strict ? r.rhs <= 0 : r.rhs < 0;
}

std::vector<Row> normalize(const LinearSystem& sys) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
        const LinearConstraint& c = sys.constraints[i];
        if (c.coeffs.size() != sys.vars.size())
            throw std::invalid_argument("constraint '" + c.label + "' has " +
                                        std::to_string(c.coeffs.size()) + " coefficients for " +
                                        std::to_string(sys.vars.size()) + " variables");
        Row r{c.coeffs, c.rel == Rel::Lt, c.rhs, {{{i, false}, Rat(1)}}};
        rows.push_back(r);
        if (c.rel == Rel::Eq) {
            Row rev = r;
            for (Rat& x : rev.coeffs) x = -x;
            rev.rhs = -c.rhs;
            rev.combo = {{{i, true}, Rat(1)}};
            rows.push_back(std::move(rev));
        }
    }
    return rows;
}

Row scale_row(const Row& r, const Rat& k) {  // k > 0
    Row out = r;
    for (Rat& x : out.coeffs) x *= k;
    out.rhs *= k;
    for (auto& [key, m] : out.combo) m *= k;
    return out;
}

Row combine(const Row& upper, const Row& lower, std::size_t var) {
    // upper has coeffs[var] > 0, lower has coeffs[var] < 0; scale both so the
    // variable's coefficient is +-1 and add.
    const Row u = scale_row(upper, Rat(1) / upper.coeffs[var]);
    const Row l = scale_row(lower, Rat(-1) / lower.coeffs[var]);
    Row out;
    out.coeffs.resize(u.coeffs.size());
    for (std::size_t j = 0; j < u.coeffs.size(); ++j) out.coeffs[j] = u.coeffs[j] + l.coeffs[j];
    out.rhs = u.rhs + l.rhs;
    out.strict = u.strict || l.strict;
    out.combo = u.combo;
    for (const auto& [key, m] : l.combo) out.combo[key] += m;
    return out;
}

// Eliminates vars[order[0]], vars[order[1]], ... and returns every stage:
// stages[k] still contains the variables order[k..]. Stops early (returning
// the stages so far) when a violated empty row shows up.
std::vector<std::vector<Row>> run_stages(std::vector<Row> rows, const std::vector<std::size_t>& order,
                                         std::optional<Row>* first_violated) {
    first_violated->reset();
    std::vector<std::vector<Row>> stages;
    stages.push_back(std::move(rows));
    for (std::size_t step = 0; step <= order.size(); ++step) {
        for (const Row& r : stages.back())
            if (violated(r)) {
                *first_violated = r;
                return stages;
            }
        if (step == order.size()) break;
        const std::size_t var = order[step];
        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const Row& r : stages.back()) {
            if (r.coeffs[var] > 0)
                pos.push_back(&r);
            else if (r.coeffs[var] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        for (const Row* u : pos)
            for (const Row* l : neg) next.push_back(combine(*u, *l, var));
        stages.push_back(std::move(next));
    }
    return stages;
}

Feasibility refutation_from(const Row& row) {
    Feasibility f;
    f.feasible = false;
    for (const auto& [key, m] : row.combo)
        f.refutation.push_back({key.first, m, key.second});
    f.refutation_rel = row.strict ? Rel::Lt : Rel::Le;
    f.refutation_rhs = row.rhs;
    return f;
}

}  // namespace

bool replay_refutation(const LinearSystem& sys, const Feasibility& f) {
    if (f.feasible || f.refutation.empty()) return false;
    std::vector<Rat> coeffs(sys.vars.size(), Rat(0));
    Rat rhs = 0;
    bool strict = false;
    for (const RefutationTerm& t : f.refutation) {
        if (t.index >= sys.constraints.size() || t.multiplier <= 0) return false;
        const LinearConstraint& c = sys.constraints[t.index];
        if (t.negated && c.rel != Rel::Eq) return false;  // only equations flip
        const Rat k = t.negated ? -t.multiplier : t.multiplier;
        for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] += k * c.coeffs[j];
        rhs += k * c.rhs;
        strict = strict || c.rel == Rel::Lt;
    }
    if (!all_zero(coeffs)) return false;
    const Rel rel = strict ? Rel::Lt : Rel::Le;
    if (rel != f.refutation_rel || rhs != f.refutation_rhs) return false;
    return rel == Rel::Lt ? rhs <= 0 : rhs < 0;  // genuinely contradictory
}

bool check_witness(const LinearSystem& sys, const std::map<std::string, Rat>& witness) {
    for (const LinearConstraint& c : sys.constraints) {
        Rat lhs = 0;
        for (std::size_t j = 0; j < sys.vars.size(); ++j) {
            const auto it = witness.find(sys.vars[j]);
            if (it == witness.end()) return false;
            lhs += c.coeffs[j] * it->second;
        }
        const bool ok = c.rel == Rel::Le   ? lhs <= c.rhs
                        : c.rel == Rel::Lt ? lhs < c.rhs
                                           : lhs == c.rhs;
        if (!ok) return false;
    }
    return true;
}

Feasibility solve(const LinearSystem& sys) {
    std::vector<std::size_t> order(sys.vars.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;

    std::optional<Row> bad;
    const auto stages = run_stages(normalize(sys), order, &bad);

    if (bad) {
        Feasibility f = refutation_from(*bad);
        if (!replay_refutation(sys, f))
            throw std::logic_error("internal error: refutation does not replay");
        return f;
    }

    // Back-substitute a witness, last eliminated variable first.
    std::vector<Rat> value(sys.vars.size(), Rat(0));
    for (std::size_t step = order.size(); step-- > 0;) {
        const std::size_t var = order[step];
        std::optional<std::pair<Rat, bool>> lower, upper;  // (value, strict)
        for (const Row& r : stages[step]) {
            if (r.coeffs[var] == 0) continue;
            Rat rest = r.rhs;
            for (std::size_t later = step + 1; later < order.size(); ++later)
                rest -= r.coeffs[order[later]] * value[order[later]];
            const Rat bound = rest / r.coeffs[var];
            if (r.coeffs[var] > 0) {  // var <= bound
                if (!upper || bound < upper->first || (bound == upper->first && r.strict))
                    upper = {bound, r.strict};
            } else {  // var >= bound
                if (!lower || bound > lower->first || (bound == lower->first && r.strict))
                    lower = {bound, r.strict};
            }
        }
        if (!lower && !upper)
            value[var] = 0;
        else if (lower && !upper)
            value[var] = lower->first + 1;
        else if (!lower && upper)
            value[var] = upper->first - 1;
        else if (lower->first == upper->first) {
            if (lower->second || upper->second)
                throw std::logic_error("internal error: elimination left an empty interval");
            value[var] = lower->first;
        } else if (lower->first < upper->first) {
            value[var] = (lower->first + upper->first) / 2;
        } else {
            throw std::logic_error("internal error: elimination left inverted bounds");
        }
    }

    Feasibility f;
    f.feasible = true;
    for (std::size_t j = 0; j < sys.vars.size(); ++j) f.witness[sys.vars[j]] = value[j];
    if (!check_witness(sys, f.witness))
        throw std::logic_error("internal error: witness fails substitution check");
    return f;
}

std::optional<std::pair<Rat, bool>> implied_upper_bound(const LinearSystem& sys, std::size_t var) {
    if (var >= sys.vars.size()) throw std::invalid_argument("implied_upper_bound: no such variable");
    // Eliminate every other variable first, then var itself: the var stage
    // carries the bounds, and finishing the elimination catches infeasible
    // systems whose contradiction involves var.
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < sys.vars.size(); ++k)
        if (k != var) order.push_back(k);
    const std::size_t var_stage = order.size();
    order.push_back(var);

    std::optional<Row> bad;
    const auto stages = run_stages(normalize(sys), order, &bad);
    if (bad) throw std::invalid_argument("implied_upper_bound: system is infeasible");

    std::optional<std::pair<Rat, bool>> best;
    for (const Row& r : stages.at(var_stage)) {
        if (r.coeffs[var] <= 0) continue;
        const Rat bound = r.rhs / r.coeffs[var];
        if (!best || bound < best->first || (bound == best->first && r.strict))
            best = {bound, r.strict};
    }
    return best;
}

}  // namespace sclcert
