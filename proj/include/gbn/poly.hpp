#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gbn {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One indeterminate of the model ring: a_i (node variance), l(i,j) (edge
/// weight, i < j) or s(i,j) (covariance entry, stored with i <= j).  The
/// member order gives the global variable order: all a_i, then all l(i,j)
/// lexicographically, then all s(i,j) lexicographically.
struct ModelVariable {
    enum class Kind : unsigned char { NodeVariance, EdgeWeight, Covariance };
    Kind kind;
    int i, j;

    static ModelVariable a(int i);
    static ModelVariable lambda(int i, int j); // requires i < j
    static ModelVariable sigma(int i, int j);  // symmetric, normalized to i <= j

    auto operator<=>(const ModelVariable&) const = default;
    std::string str() const;
};

/// Sorted (variable, exponent) pairs, exponents > 0.
using Monomial = std::vector<std::pair<ModelVariable, int>>;

int monomial_degree(const Monomial& m);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
/// Graded order, ties broken lexicographically in the global variable order.
bool monomial_less(const Monomial& a, const Monomial& b);

/// Sparse polynomial with arbitrary-precision integer coefficients.  The zero
/// polynomial is the empty term map; no zero coefficient is ever stored.
class ModelPolynomial {
public:
    ModelPolynomial() = default;
    explicit ModelPolynomial(long c);
    explicit ModelPolynomial(const mpz_class& c);
    explicit ModelPolynomial(ModelVariable v);
    ModelPolynomial(Monomial m, mpz_class c);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, mpz_class>& terms() const { return terms_; }
    int total_degree() const;

    ModelPolynomial operator-() const;
    ModelPolynomial& operator+=(const ModelPolynomial& o);
    ModelPolynomial& operator-=(const ModelPolynomial& o);
    friend ModelPolynomial operator+(ModelPolynomial a, const ModelPolynomial& b) { return a += b; }
    friend ModelPolynomial operator-(ModelPolynomial a, const ModelPolynomial& b) { return a -= b; }
    friend ModelPolynomial operator*(const ModelPolynomial& a, const ModelPolynomial& b);
    bool operator==(const ModelPolynomial&) const = default;

    /// Canonical printed form: terms in decreasing graded-lex order,
    /// variables as a1 / l(1,2) / s(1,2), exponents as ^k, factors joined
    /// with '*'.  This string is the golden-file contract.
    std::string str() const;
    static ModelPolynomial parse(const std::string& text);

    /// Exact evaluation; the callback supplies a rational value per variable.
    mpq_class evaluate(const std::function<mpq_class(const ModelVariable&)>& val) const;

    void for_each_variable(const std::function<void(const ModelVariable&)>& f) const;

private:
    std::map<Monomial, mpz_class> terms_;
    void add_term(const Monomial& m, const mpz_class& c);
};

/// Image of a sigma-polynomial under the ring homomorphism sending each
/// s(i,j) to image(i,j).  Throws if p contains a/lambda variables or an
/// unmapped sigma variable (image returns nullptr).
ModelPolynomial substitute_sigma(
    const ModelPolynomial& p,
    const std::function<const ModelPolynomial*(int, int)>& image);

} // namespace gbn
