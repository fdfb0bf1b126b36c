#pragma once

#include <map>
#include <string>
#include <vector>

#include "courant/chart.hpp"
#include "courant/rational.hpp"

namespace courant {

/// Exponent vector, one entry per chart coordinate.
using Monomial = std::vector<int>;

/// Graded lexicographic order (total degree first, then lex by coordinate index).
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial with exact rational coefficients on a fixed number
/// of variables.  No zero coefficients are stored; representation is canonical,
/// so equality is structural.
class Polynomial {
public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}
    Polynomial(int nvars, const Rational& c);

    static Polynomial variable(int nvars, int i, int power = 1);
    static Polynomial constant(int nvars, const Rational& c) { return Polynomial(nvars, c); }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // throws unless constant
    int total_degree() const;

    const std::map<Monomial, Rational, GradedLexLess>& terms() const { return terms_; }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    /// Substitute subs[i] for variable i; subs live on a possibly different chart.
    Polynomial compose(const std::vector<Polynomial>& subs) const;

    void add_term(const Monomial& m, const Rational& c);

    std::string str(const Chart& chart) const;
    static Polynomial parse(const Chart& chart, const std::string& text);

private:
    int nvars_;
    std::map<Monomial, Rational, GradedLexLess> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix poly_matrix_zero(int rows, int cols, int nvars);
PolyMatrix poly_matrix_identity(int n, int nvars);
PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_transpose(const PolyMatrix& a);
bool poly_matrix_equal(const PolyMatrix& a, const PolyMatrix& b);
bool poly_matrix_is_zero(const PolyMatrix& a);
Polynomial poly_matrix_det(const PolyMatrix& a);
/// Adjugate, so a * adj = det * I.
PolyMatrix poly_matrix_adjugate(const PolyMatrix& a);

/// Re-express p on the subchart picked out by base_coords (positions into the
/// big chart); throws if p depends on a dropped coordinate.
Polynomial poly_restrict(const Polynomial& p, const std::vector<int>& base_coords, int quotient_dim);
/// Inject a subchart polynomial back into the big chart.
Polynomial poly_inject(const Polynomial& p, const std::vector<int>& base_coords, int total_dim);

}  // namespace courant
