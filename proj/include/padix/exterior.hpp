#ifndef PADIX_EXTERIOR_HPP
#define PADIX_EXTERIOR_HPP

#include <map>
#include <vector>

#include "padix/series.hpp"

namespace padix {

/// Differential k-form with MultiSeries coefficients.
///
/// vars() lists every variable the coefficients may depend on; frame() lists
/// the indices of the variables that carry differentials. Keeping the two
/// apart lets a time parameter ride along in the coefficients without ever
/// producing a dt component. Terms are stored on strictly increasing index
/// subsets of the frame (canonical orientation).
class KForm {
public:
    using Subset = std::vector<size_t>;  // strictly increasing var indices
    using TermMap = std::map<Subset, MultiSeries>;

    KForm(int degree, std::vector<std::string> vars, int order,
          std::vector<Rational> center = {}, std::vector<size_t> frame = {});

    int degree() const { return degree_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int order() const { return order_; }
    const std::vector<Rational>& center() const { return center_; }
    const std::vector<size_t>& frame() const { return frame_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    MultiSeries coeff(const Subset& s) const;
    void add_term(const Subset& s, const MultiSeries& c);

    KForm truncated(int order) const;
    /// Keep only coefficient terms whose total degree over the given
    /// variables lies in [lo, hi].
    KForm filter_coeff_degree(const std::vector<size_t>& var_idx, int lo, int hi) const;

    KForm operator-() const;
    friend KForm operator+(const KForm& a, const KForm& b);
    friend KForm operator-(const KForm& a, const KForm& b);
    friend KForm operator*(const Rational& c, const KForm& a);
    friend KForm operator*(const MultiSeries& f, const KForm& a);
    KForm& operator+=(const KForm& b) { return *this = *this + b; }
    KForm& operator-=(const KForm& b) { return *this = *this - b; }

    friend bool operator==(const KForm& a, const KForm& b);

    Valuation min_coeff_valuation(long p) const;

    std::string str() const;

private:
    int degree_;
    std::vector<std::string> vars_;
    int order_;
    std::vector<Rational> center_;
    std::vector<size_t> frame_;
    TermMap terms_;

    void check_compatible(const KForm& b, const char* op) const;
    friend KForm wedge(const KForm& a, const KForm& b);
};

/// Vector field over the frame variables; one component per frame entry.
struct VectorField {
    std::vector<std::string> vars;
    int order = 0;
    std::vector<Rational> center;
    std::vector<size_t> frame;
    std::vector<MultiSeries> components;

    static VectorField zero(std::vector<std::string> vars, int order,
                            std::vector<Rational> center = {}, std::vector<size_t> frame = {});
};

/// Matrix view of a 2-form on the frame: entries[i][j] is the coefficient of
/// dx_{frame[i]} wedge dx_{frame[j]} for i < j (and skew below the diagonal),
/// so that contract(X, a) has components -(M X).
struct FormMatrix {
    std::vector<std::string> vars;
    int order = 0;
    std::vector<Rational> center;
    std::vector<size_t> frame;
    std::vector<std::vector<MultiSeries>> entries;
    bool skew = true;
};

KForm wedge(const KForm& a, const KForm& b);
KForm exterior_d(const KForm& a);
KForm contract(const VectorField& X, const KForm& a);
KForm lie_derivative(const VectorField& X, const KForm& a);

/// Pullback along the map whose i-th target coordinate is map[i], a series in
/// the source variables. source_frame selects which source variables carry
/// differentials (the rest are parameters, e.g. time).
KForm pullback(const std::vector<MultiSeries>& map, const KForm& a,
               const std::vector<size_t>& source_frame);
KForm pullback(const std::vector<MultiSeries>& map, const KForm& a);

FormMatrix two_form_matrix(const KForm& a);
KForm matrix_two_form(const FormMatrix& M);

/// sum dx_{2i} wedge dx_{2i+1} over consecutive frame pairs.
KForm standard_symplectic_form(const std::vector<std::string>& vars, int order,
                               std::vector<Rational> center = {},
                               std::vector<size_t> frame = {});

}  // namespace padix

#endif
