#include "padix/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace padix {

int total_degree(const MultiSeries::Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

MultiSeries::MultiSeries(std::vector<std::string> vars, int order,
                         std::vector<Rational> center)
    : vars_(std::move(vars)), order_(order), center_(std::move(center)) {
    if (order_ < 0) throw std::invalid_argument("MultiSeries: negative order");
    if (center_.empty()) center_.assign(vars_.size(), Rational(0));
    if (center_.size() != vars_.size())
        throw std::invalid_argument("MultiSeries: center/vars size mismatch");
    std::set<std::string> uniq(vars_.begin(), vars_.end());
    if (uniq.size() != vars_.size())
        throw std::invalid_argument("MultiSeries: duplicate variable names");
}

MultiSeries MultiSeries::constant(std::vector<std::string> vars, int order,
                                  const Rational& c, std::vector<Rational> center) {
    MultiSeries s(std::move(vars), order, std::move(center));
    if (c != 0) s.terms_[Exponents(s.vars_.size(), 0)] = c;
    return s;
}

MultiSeries MultiSeries::coordinate(std::vector<std::string> vars, int order, size_t index,
                                    std::vector<Rational> center) {
    MultiSeries s(std::move(vars), order, std::move(center));
    if (index >= s.vars_.size()) throw std::invalid_argument("coordinate: bad index");
    if (s.center_[index] != 0) s.terms_[Exponents(s.vars_.size(), 0)] = s.center_[index];
    if (order >= 1) {
        Exponents e(s.vars_.size(), 0);
        e[index] = 1;
        s.terms_[e] = Rational(1);
    }
    return s;
}

size_t MultiSeries::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown variable '" + name + "'");
}

Rational MultiSeries::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiSeries::constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

void MultiSeries::set_coeff(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("set_coeff: bad exponents");
    if (total_degree(e) > order_) throw std::invalid_argument("set_coeff: degree above order");
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

void MultiSeries::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("add_term: bad exponents");
    if (total_degree(e) > order_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<int> MultiSeries::min_degree() const {
    std::optional<int> m;
    for (const auto& [e, c] : terms_) {
        int d = total_degree(e);
        if (!m || d < *m) m = d;
    }
    return m;
}

std::optional<int> MultiSeries::max_degree() const {
    std::optional<int> m;
    for (const auto& [e, c] : terms_) {
        int d = total_degree(e);
        if (!m || d > *m) m = d;
    }
    return m;
}

MultiSeries MultiSeries::truncated(int order) const {
    MultiSeries r(vars_, order, center_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) <= order) r.terms_[e] = c;
    return r;
}

MultiSeries MultiSeries::filter_degree(const std::vector<size_t>& var_idx, int lo, int hi) const {
    MultiSeries r(vars_, order_, center_);
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (size_t v : var_idx) d += e[v];
        if (d >= lo && d <= hi) r.terms_[e] = c;
    }
    return r;
}

MultiSeries MultiSeries::coeff_of_power(size_t var, int k) const {
    MultiSeries r(vars_, order_, center_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        Exponents e2 = e;
        e2[var] = 0;
        r.terms_[e2] = c;
    }
    return r;
}

void MultiSeries::check_compatible(const MultiSeries& b, const char* op) const {
    if (vars_ != b.vars_) throw std::invalid_argument(std::string(op) + ": variable mismatch");
    if (center_ != b.center_) throw std::invalid_argument(std::string(op) + ": center mismatch");
}

MultiSeries MultiSeries::operator-() const {
    MultiSeries r(vars_, order_, center_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) {
    a.check_compatible(b, "add");
    MultiSeries r(a.vars_, std::min(a.order_, b.order_), a.center_);
    for (const auto& [e, c] : a.terms_)
        if (total_degree(e) <= r.order_) r.terms_[e] = c;
    for (const auto& [e, c] : b.terms_) {
        if (total_degree(e) > r.order_) continue;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end())
            r.terms_[e] = c;
        else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return a + (-b); }

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    a.check_compatible(b, "mul");
    MultiSeries r(a.vars_, std::min(a.order_, b.order_), a.center_);
    for (const auto& [ea, ca] : a.terms_) {
        int da = total_degree(ea);
        if (da > r.order_) continue;
        for (const auto& [eb, cb] : b.terms_) {
            if (da + total_degree(eb) > r.order_) continue;
            MultiSeries::Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_[e] = ca * cb;
            else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

MultiSeries operator*(const Rational& c, const MultiSeries& a) {
    MultiSeries r(a.vars_, a.order_, a.center_);
    if (c == 0) return r;
    for (const auto& [e, x] : a.terms_) r.terms_[e] = c * x;
    return r;
}

MultiSeries operator*(const MultiSeries& a, const Rational& c) { return c * a; }

bool operator==(const MultiSeries& a, const MultiSeries& b) {
    return a.vars_ == b.vars_ && a.center_ == b.center_ && a.terms_ == b.terms_;
}

MultiSeries MultiSeries::inverse() const {
    Rational c0 = constant_term();
    if (c0 == 0) throw std::domain_error("inverse: zero constant term");
    // 1/(c0 (1 + u)) with u = f/c0 - 1, via the geometric series in u.
    MultiSeries u = (Rational(1) / c0) * (*this);
    u.terms_.erase(Exponents(vars_.size(), 0));
    MultiSeries acc = constant(vars_, order_, Rational(1), center_);
    MultiSeries pow = constant(vars_, order_, Rational(1), center_);
    int steps = u.is_zero() ? 0 : order_ / std::max(1, u.min_degree().value_or(1));
    for (int k = 1; k <= steps; ++k) {
        pow = pow * u;
        if (pow.is_zero()) break;
        acc += (k % 2 == 1) ? -pow : pow;
    }
    return (Rational(1) / c0) * acc;
}

MultiSeries MultiSeries::compose(const std::vector<MultiSeries>& g) const {
    if (g.size() != vars_.size()) throw std::invalid_argument("compose: arity mismatch");
    for (size_t i = 1; i < g.size(); ++i) g[0].check_compatible(g[i], "compose");
    int ord = order_;
    for (const auto& gi : g) ord = std::min(ord, gi.order());
    MultiSeries r(g[0].vars_, ord, g[0].center_);
    // memoized powers of each argument
    std::vector<std::vector<MultiSeries>> powers(g.size());
    auto power = [&](size_t i, int k) -> const MultiSeries& {
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(constant(g[0].vars_, ord, Rational(1), g[0].center_));
        while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * g[i]);
        return tab[k];
    };
    for (const auto& [e, c] : terms_) {
        MultiSeries term = constant(g[0].vars_, ord, c, g[0].center_);
        for (size_t i = 0; i < g.size(); ++i)
            if (e[i] > 0) term = term * power(i, e[i]);
        r += term;
    }
    return r;
}

MultiSeries MultiSeries::partial_derivative(size_t var) const {
    if (var >= vars_.size()) throw std::invalid_argument("partial_derivative: bad variable");
    if (order_ == 0) return MultiSeries(vars_, 0, center_);
    MultiSeries r(vars_, order_ - 1, center_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents e2 = e;
        e2[var] -= 1;
        if (total_degree(e2) > r.order_) continue;
        r.terms_[e2] = Rational(e[var]) * c;
    }
    return r;
}

MultiSeries MultiSeries::partial_derivative(const std::string& var) const {
    return partial_derivative(var_index(var));
}

MultiSeries MultiSeries::recenter(std::vector<Rational> new_center) const {
    if (new_center.size() != vars_.size())
        throw std::invalid_argument("recenter: dimension mismatch");
    if (new_center == center_) return *this;
    // In the new local coordinates u = x - c', the old ones are
    // u + (c' - c); substituting is exact for the stored polynomial.
    std::vector<MultiSeries> shift;
    shift.reserve(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        MultiSeries s(vars_, order_, new_center);
        Exponents e0(vars_.size(), 0);
        Rational delta = new_center[i] - center_[i];
        if (delta != 0) s.terms_[e0] = delta;
        if (order_ >= 1) {
            Exponents e1(vars_.size(), 0);
            e1[i] = 1;
            s.terms_[e1] = Rational(1);
        }
        shift.push_back(std::move(s));
    }
    return compose(shift);
}

Rational MultiSeries::eval(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("eval: dimension mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (size_t i = 0; i < e.size(); ++i) {
            Rational base = point[i] - center_[i];
            for (int k = 0; k < e[i]; ++k) term *= base;
        }
        acc += term;
    }
    return acc;
}

MultiSeries MultiSeries::with_vars(const std::vector<std::string>& vars,
                                   const std::vector<Rational>& center) const {
    MultiSeries r(vars, order_, center);
    std::vector<size_t> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        pos[i] = r.var_index(vars_[i]);
        if (r.center_[pos[i]] != center_[i])
            throw std::invalid_argument("with_vars: center mismatch for " + vars_[i]);
    }
    for (const auto& [e, c] : terms_) {
        Exponents e2(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) e2[pos[i]] = e[i];
        r.terms_[e2] = c;
    }
    return r;
}

Valuation MultiSeries::min_coeff_valuation(long p) const {
    Valuation m = Valuation::infinity();
    for (const auto& [e, c] : terms_) m = min(m, valuation(c, p));
    return m;
}

std::string MultiSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << vars_[i];
            if (center_[i] != 0) os << "@" << center_[i].get_str();
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

CoeffSup coeff_sup(const MultiSeries& f, const Context& ctx) {
    CoeffSup cs;
    cs.values.assign(static_cast<size_t>(f.order()) + 1, Valuation::infinity());
    for (const auto& [e, c] : f.terms()) {
        int d = total_degree(e);
        cs.values[static_cast<size_t>(d)] = min(cs.values[static_cast<size_t>(d)], valuation(c, ctx));
    }
    return cs;
}

Certificate converges_on_ball(const MultiSeries& f, long radius_exponent, const Context& ctx) {
    Certificate cert;
    cert.name = "converges-on-ball";
    CoeffSup cs = coeff_sup(f, ctx);
    int D = f.order();
    // E_k = v_p(C_k r^k) as an exponent of 1/p: term size is p^{-E_k}.
    // Convergence requires E_k -> +inf; we compare window maxima of -E_k.
    std::vector<std::pair<int, long>> sizes;  // (degree, exponent of p in C_k r^k)
    for (int k = 0; k <= D; ++k) {
        const Valuation& v = cs.values[static_cast<size_t>(k)];
        if (!v.finite()) continue;
        sizes.emplace_back(k, k * radius_exponent - v.value);
        cert.details.push_back("k=" + std::to_string(k) + " size_exp=" +
                               std::to_string(k * radius_exponent - v.value));
    }
    auto window_max = [&](int lo, int hi) -> std::optional<std::pair<int, long>> {
        std::optional<std::pair<int, long>> m;
        for (const auto& [k, s] : sizes)
            if (k > lo && k <= hi && (!m || s > m->second)) m = {k, s};
        return m;
    };
    auto tail = window_max(D / 2, D);
    if (!tail) {
        cert.verdict = "CONSISTENT";
        cert.details.push_back("finite tail within window (no terms above degree D/2)");
        return cert;
    }
    auto mid = window_max(D / 4, D / 2);
    if (!mid) mid = window_max(-1, D / 2);
    bool decaying = mid && tail->second < mid->second && tail->second < 0;
    if (decaying) {
        cert.verdict = "CONSISTENT";
        cert.details.push_back("window maxima decreasing: mid p^" + std::to_string(mid->second) +
                               " -> tail p^" + std::to_string(tail->second));
    } else {
        cert.verdict = "DIVERGENCE-WITNESS";
        cert.details.push_back("witness k=" + std::to_string(tail->first) + " with |C_k r^k| = p^" +
                               std::to_string(tail->second));
    }
    cert.details.push_back("claim restricted to truncation order D=" + std::to_string(D));
    return cert;
}

MultiSeries exp_series(int order, const std::string& var) {
    MultiSeries s({var}, order);
    Rational c(1);
    for (int j = 0; j <= order; ++j) {
        if (j > 0) c /= j;
        s.set_coeff({j}, c);
    }
    return s;
}

MultiSeries log1p_series(int order, const std::string& var) {
    MultiSeries s({var}, order);
    for (int j = 1; j <= order; ++j)
        s.set_coeff({j}, Rational(j % 2 == 1 ? 1 : -1, j));
    return s;
}

}  // namespace padix
