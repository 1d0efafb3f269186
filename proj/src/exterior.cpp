#include "padix/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace padix {

KForm::KForm(int degree, std::vector<std::string> vars, int order,
             std::vector<Rational> center, std::vector<size_t> frame)
    : degree_(degree), vars_(std::move(vars)), order_(order), center_(std::move(center)),
      frame_(std::move(frame)) {
    if (center_.empty()) center_.assign(vars_.size(), Rational(0));
    if (frame_.empty()) {
        frame_.resize(vars_.size());
        for (size_t i = 0; i < vars_.size(); ++i) frame_[i] = i;
    }
    // degree above the frame size is allowed: no subsets exist, the form is 0
    if (degree_ < 0) throw std::invalid_argument("KForm: bad degree");
}

MultiSeries KForm::coeff(const Subset& s) const {
    auto it = terms_.find(s);
    if (it != terms_.end()) return it->second;
    return MultiSeries(vars_, order_, center_);
}

void KForm::add_term(const Subset& s, const MultiSeries& c) {
    if (static_cast<int>(s.size()) != degree_) throw std::invalid_argument("add_term: bad subset size");
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] >= s[i + 1]) throw std::invalid_argument("add_term: subset not increasing");
    for (size_t v : s)
        if (std::find(frame_.begin(), frame_.end(), v) == frame_.end())
            throw std::invalid_argument("add_term: subset leaves the frame");
    if (c.vars() != vars_ || c.center() != center_)
        throw std::invalid_argument("add_term: coefficient vars/center mismatch");
    MultiSeries cc = c.order() == order_ ? c : c.truncated(order_);
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        if (!cc.is_zero()) terms_.emplace(s, std::move(cc));
    } else {
        MultiSeries sum = it->second + cc;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = std::move(sum);
    }
}

KForm KForm::truncated(int order) const {
    KForm r(degree_, vars_, order, center_, frame_);
    for (const auto& [s, c] : terms_) {
        MultiSeries cc = c.truncated(order);
        if (!cc.is_zero()) r.terms_.emplace(s, std::move(cc));
    }
    return r;
}

KForm KForm::filter_coeff_degree(const std::vector<size_t>& var_idx, int lo, int hi) const {
    KForm r(degree_, vars_, order_, center_, frame_);
    for (const auto& [s, c] : terms_) {
        MultiSeries cc = c.filter_degree(var_idx, lo, hi);
        if (!cc.is_zero()) r.terms_.emplace(s, std::move(cc));
    }
    return r;
}

void KForm::check_compatible(const KForm& b, const char* op) const {
    if (vars_ != b.vars_ || center_ != b.center_ || frame_ != b.frame_)
        throw std::invalid_argument(std::string(op) + ": incompatible forms");
}

KForm KForm::operator-() const {
    KForm r(degree_, vars_, order_, center_, frame_);
    for (const auto& [s, c] : terms_) r.terms_.emplace(s, -c);
    return r;
}

KForm operator+(const KForm& a, const KForm& b) {
    a.check_compatible(b, "form add");
    if (a.degree_ != b.degree_) throw std::invalid_argument("form add: degree mismatch");
    KForm r = a.truncated(std::min(a.order_, b.order_));
    for (const auto& [s, c] : b.terms_) r.add_term(s, c.truncated(r.order_));
    return r;
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm operator*(const Rational& c, const KForm& a) {
    KForm r(a.degree_, a.vars_, a.order_, a.center_, a.frame_);
    if (c == 0) return r;
    for (const auto& [s, x] : a.terms_) r.terms_.emplace(s, c * x);
    return r;
}

KForm operator*(const MultiSeries& f, const KForm& a) {
    KForm r(a.degree_, a.vars_, std::min(a.order_, f.order()), a.center_, a.frame_);
    for (const auto& [s, x] : a.terms_) {
        MultiSeries c = f * x;
        if (!c.is_zero()) r.terms_.emplace(s, std::move(c));
    }
    return r;
}

bool operator==(const KForm& a, const KForm& b) {
    return a.degree_ == b.degree_ && a.vars_ == b.vars_ && a.center_ == b.center_ &&
           a.frame_ == b.frame_ && a.terms_ == b.terms_;
}

Valuation KForm::min_coeff_valuation(long p) const {
    Valuation m = Valuation::infinity();
    for (const auto& [s, c] : terms_) m = min(m, c.min_coeff_valuation(p));
    return m;
}

std::string KForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        for (size_t v : s) os << " d" << vars_[v];
    }
    return os.str();
}

namespace {

// Merge two increasing subsets; returns false on a repeated index, otherwise
// stores the merged subset and the sign of the sorting permutation.
bool merge_subsets(const KForm::Subset& a, const KForm::Subset& b, KForm::Subset& out, int& sign) {
    out.clear();
    sign = 1;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            // moving b[j] past the remaining a-elements costs one
            // transposition each
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        } else {
            return false;  // a[i] == b[j]
        }
    }
    return true;
}

}  // namespace

KForm wedge(const KForm& a, const KForm& b) {
    a.check_compatible(b, "wedge");
    // a degree sum beyond the frame size leaves no subsets: the result is 0
    KForm r(a.degree_ + b.degree_, a.vars_, std::min(a.order_, b.order_), a.center_, a.frame_);
    KForm::Subset merged;
    int sign;
    for (const auto& [sa, ca] : a.terms_)
        for (const auto& [sb, cb] : b.terms_) {
            if (!merge_subsets(sa, sb, merged, sign)) continue;
            MultiSeries c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(merged, c);
        }
    return r;
}

KForm exterior_d(const KForm& a) {
    int ord = std::max(0, a.order() - 1);
    KForm r(a.degree() + 1, a.vars(), ord, a.center(), a.frame());
    for (const auto& [s, c] : a.terms()) {
        for (size_t v : a.frame()) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            MultiSeries dc = c.partial_derivative(v);
            if (dc.is_zero()) continue;
            KForm::Subset s2 = s;
            auto pos = std::upper_bound(s2.begin(), s2.end(), v);
            int k = static_cast<int>(pos - s2.begin());
            s2.insert(pos, v);
            r.add_term(s2, k % 2 == 0 ? dc : -dc);
        }
    }
    return r;
}

KForm contract(const VectorField& X, const KForm& a) {
    if (a.degree() == 0) throw std::invalid_argument("contract: degree 0 form");
    if (X.vars != a.vars() || X.frame != a.frame() || X.center != a.center())
        throw std::invalid_argument("contract: field/form mismatch");
    int ord = a.order();
    for (const auto& c : X.components) ord = std::min(ord, c.order());
    KForm r(a.degree() - 1, a.vars(), ord, a.center(), a.frame());
    for (const auto& [s, c] : a.terms()) {
        for (size_t k = 0; k < s.size(); ++k) {
            size_t fi = std::find(a.frame().begin(), a.frame().end(), s[k]) - a.frame().begin();
            MultiSeries c2 = c.truncated(ord) * X.components[fi].truncated(ord);
            if (c2.is_zero()) continue;
            KForm::Subset s2 = s;
            s2.erase(s2.begin() + static_cast<long>(k));
            r.add_term(s2, k % 2 == 0 ? c2 : -c2);
        }
    }
    return r;
}

KForm lie_derivative(const VectorField& X, const KForm& a) {
    if (a.degree() == 0) {
        // L_X f = X(f): handled via d then contraction on the 1-form df
        return contract(X, exterior_d(a));
    }
    return contract(X, exterior_d(a)) + exterior_d(contract(X, a));
}

KForm pullback(const std::vector<MultiSeries>& map, const KForm& a,
               const std::vector<size_t>& source_frame) {
    if (map.size() != a.vars().size())
        throw std::invalid_argument("pullback: need one map component per form variable");
    for (size_t i = 1; i < map.size(); ++i)
        if (map[i].vars() != map[0].vars() || map[i].center() != map[0].center())
            throw std::invalid_argument("pullback: map components incompatible");
    const auto& svars = map[0].vars();
    const auto& scenter = map[0].center();
    int map_ord = map[0].order();
    for (const auto& m : map) map_ord = std::min(map_ord, m.order());
    int ord = std::min(a.order(), map_ord);
    if (a.degree() > 0) ord = std::min(ord, map_ord - 1);
    KForm r(a.degree(), svars, std::max(0, ord), scenter, source_frame);

    // differentials of the map components that appear in some subset
    std::map<size_t, KForm> dmap;
    for (const auto& [s, c] : a.terms())
        for (size_t v : s)
            if (!dmap.count(v)) {
                KForm dg(1, svars, std::max(0, map_ord - 1), scenter, source_frame);
                for (size_t j : source_frame) {
                    MultiSeries pd = map[v].partial_derivative(j);
                    if (!pd.is_zero()) dg.add_term({j}, pd);
                }
                dmap.emplace(v, std::move(dg));
            }

    for (const auto& [s, c] : a.terms()) {
        MultiSeries cc = c.compose(map).truncated(r.order());
        if (cc.is_zero()) continue;
        if (s.empty()) {
            KForm term(0, svars, r.order(), scenter, source_frame);
            term.add_term({}, cc);
            r += term;
            continue;
        }
        KForm w = dmap.at(s[0]);
        for (size_t k = 1; k < s.size(); ++k) w = wedge(w, dmap.at(s[k]));
        r += cc * w.truncated(r.order());
    }
    return r;
}

KForm pullback(const std::vector<MultiSeries>& map, const KForm& a) {
    std::vector<size_t> frame(map.empty() ? 0 : map[0].vars().size());
    for (size_t i = 0; i < frame.size(); ++i) frame[i] = i;
    return pullback(map, a, frame);
}

FormMatrix two_form_matrix(const KForm& a) {
    if (a.degree() != 2) throw std::invalid_argument("two_form_matrix: degree must be 2");
    size_t n = a.frame().size();
    FormMatrix M;
    M.vars = a.vars();
    M.order = a.order();
    M.center = a.center();
    M.frame = a.frame();
    M.entries.assign(n, std::vector<MultiSeries>(n, MultiSeries(a.vars(), a.order(), a.center())));
    for (const auto& [s, c] : a.terms()) {
        size_t i = std::find(a.frame().begin(), a.frame().end(), s[0]) - a.frame().begin();
        size_t j = std::find(a.frame().begin(), a.frame().end(), s[1]) - a.frame().begin();
        M.entries[i][j] = c;
        M.entries[j][i] = -c;
    }
    return M;
}

KForm matrix_two_form(const FormMatrix& M) {
    size_t n = M.frame.size();
    for (size_t i = 0; i < n; ++i) {
        if (!M.entries[i][i].is_zero())
            throw std::invalid_argument("matrix_two_form: nonzero diagonal");
        for (size_t j = i + 1; j < n; ++j)
            if (!(M.entries[i][j] + M.entries[j][i]).is_zero())
                throw std::invalid_argument("matrix_two_form: matrix not skew");
    }
    KForm r(2, M.vars, M.order, M.center, M.frame);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!M.entries[i][j].is_zero()) r.add_term({M.frame[i], M.frame[j]}, M.entries[i][j]);
    return r;
}

VectorField VectorField::zero(std::vector<std::string> vars, int order,
                              std::vector<Rational> center, std::vector<size_t> frame) {
    VectorField X;
    X.vars = std::move(vars);
    X.order = order;
    X.center = std::move(center);
    if (X.center.empty()) X.center.assign(X.vars.size(), Rational(0));
    X.frame = std::move(frame);
    if (X.frame.empty()) {
        X.frame.resize(X.vars.size());
        for (size_t i = 0; i < X.vars.size(); ++i) X.frame[i] = i;
    }
    X.components.assign(X.frame.size(), MultiSeries(X.vars, order, X.center));
    return X;
}

KForm standard_symplectic_form(const std::vector<std::string>& vars, int order,
                               std::vector<Rational> center, std::vector<size_t> frame) {
    KForm r(2, vars, order, std::move(center), std::move(frame));
    if (r.frame().size() % 2 != 0)
        throw std::invalid_argument("standard_symplectic_form: odd frame size");
    for (size_t i = 0; i + 1 < r.frame().size(); i += 2)
        r.add_term({r.frame()[i], r.frame()[i + 1]},
                   MultiSeries::constant(r.vars(), order, Rational(1), r.center()));
    return r;
}

}  // namespace padix
