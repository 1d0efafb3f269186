#ifndef PADIX_SERIES_HPP
#define PADIX_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padix/certificate.hpp"
#include "padix/padic.hpp"

namespace padix {

/// Truncated sparse multivariate power series over exact rationals.
///
/// Terms of total degree > order() are absent by contract; every operation
/// documents the order of its result. Coefficients are indexed by exponent
/// vectors relative to the center, so the stored object represents
///   sum_I a_I (x_1 - c_1)^{I_1} ... (x_l - c_l)^{I_l}.
class MultiSeries {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    MultiSeries(std::vector<std::string> vars, int order,
                std::vector<Rational> center = {});

    static MultiSeries constant(std::vector<std::string> vars, int order,
                                const Rational& c, std::vector<Rational> center = {});
    /// The affine coordinate function x_i = c_i + (x_i - c_i).
    static MultiSeries coordinate(std::vector<std::string> vars, int order, size_t index,
                                  std::vector<Rational> center = {});

    const std::vector<std::string>& vars() const { return vars_; }
    int order() const { return order_; }
    const std::vector<Rational>& center() const { return center_; }
    const TermMap& terms() const { return terms_; }

    size_t var_index(const std::string& name) const;

    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Exponents& e) const;
    Rational constant_term() const;
    void set_coeff(const Exponents& e, const Rational& c);
    void add_term(const Exponents& e, const Rational& c);

    /// Smallest total degree of a nonzero term; empty for the zero series.
    std::optional<int> min_degree() const;
    std::optional<int> max_degree() const;

    MultiSeries truncated(int order) const;
    /// Keep only terms whose total degree over the listed variables lies
    /// in [lo, hi].
    MultiSeries filter_degree(const std::vector<size_t>& var_idx, int lo, int hi) const;
    /// Coefficient of x_v^k, as a series in the same variable list
    /// (with exponent 0 in x_v).
    MultiSeries coeff_of_power(size_t var, int k) const;

    MultiSeries operator-() const;
    friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator*(const Rational& c, const MultiSeries& a);
    friend MultiSeries operator*(const MultiSeries& a, const Rational& c);
    MultiSeries& operator+=(const MultiSeries& b) { return *this = *this + b; }
    MultiSeries& operator-=(const MultiSeries& b) { return *this = *this - b; }
    MultiSeries& operator*=(const MultiSeries& b) { return *this = *this * b; }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b);

    /// Multiplicative inverse up to the truncation order; requires a nonzero
    /// constant term.
    MultiSeries inverse() const;

    /// Substitute g[i] for variable i. The stored polynomial is substituted
    /// verbatim; the result is exact at truncation when every g[i] has zero
    /// constant term, or when this series is an exact polynomial.
    MultiSeries compose(const std::vector<MultiSeries>& g) const;

    MultiSeries partial_derivative(size_t var) const;
    MultiSeries partial_derivative(const std::string& var) const;

    /// Taylor re-expansion about new_center, truncated at order.
    MultiSeries recenter(std::vector<Rational> new_center) const;

    /// Exact evaluation of the stored polynomial at a rational point.
    Rational eval(const std::vector<Rational>& point) const;

    /// Embed into a larger variable list (matched by name); new variables get
    /// exponent zero and the given center entries.
    MultiSeries with_vars(const std::vector<std::string>& vars,
                          const std::vector<Rational>& center) const;

    /// min over coefficients of v_p (so the sup norm is p^-result);
    /// +infinity for the zero series.
    Valuation min_coeff_valuation(long p) const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    int order_;
    std::vector<Rational> center_;
    TermMap terms_;

    void check_compatible(const MultiSeries& b, const char* op) const;
};

/// Per-degree coefficient sup norms: C_k = p^(-values[k]), with the
/// +infinity valuation marking an all-zero degree.
struct CoeffSup {
    std::vector<Valuation> values;  // index k = total degree, 0..order
};

CoeffSup coeff_sup(const MultiSeries& f, const Context& ctx);

/// Window evidence for convergence of f on the ball of radius
/// p^radius_exponent. The verdict is about the truncated window only.
Certificate converges_on_ball(const MultiSeries& f, long radius_exponent, const Context& ctx);

MultiSeries exp_series(int order, const std::string& var = "x");
MultiSeries log1p_series(int order, const std::string& var = "x");

int total_degree(const MultiSeries::Exponents& e);

}  // namespace padix

#endif
