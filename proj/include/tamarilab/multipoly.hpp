#pragma once

// Sparse multivariate polynomials over BigRat in up to four named variables.
// Variables can individually opt in to Laurent exponents (negative powers);
// everything else insists on ordinary polynomials so that structural
// divisibility claims turn into hard errors instead of silent wrap-arounds.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tamarilab/rational.hpp"

namespace tamarilab {

class VarTable {
public:
    VarTable() = default;
    VarTable(std::initializer_list<std::string> names);

    // Marks a subset of the variables as Laurent (negative exponents allowed).
    static VarTable with_laurent(std::vector<std::string> names,
                                 std::vector<std::string> laurent_names);

    int index(std::string_view name) const;        // -1 when absent
    int require(std::string_view name) const;      // throws when absent
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    bool laurent(std::size_t i) const { return laurent_[i]; }
    bool operator==(const VarTable& o) const { return names_ == o.names_ && laurent_ == o.laurent_; }

private:
    std::vector<std::string> names_;
    std::vector<bool> laurent_;
};

class MultiPoly {
public:
    static constexpr int kMaxVars = 4;
    using Exps = std::array<int32_t, kMaxVars>;
    using TermMap = std::map<Exps, BigRat>;

    MultiPoly() = default;
    explicit MultiPoly(VarTable vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const VarTable& vars, BigRat c);
    static MultiPoly variable(const VarTable& vars, std::string_view name, int exp = 1);
    // Parses an expanded form like "3*V^2*w^-1 - z + 5/2". No parentheses; a
    // term is an optional rational coefficient followed by '*'-joined powers.
    static MultiPoly parse(const VarTable& vars, std::string_view expr);

    const VarTable& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigRat constant_value() const;  // throws unless constant (or zero)
    std::size_t num_terms() const { return terms_.size(); }

    // Inclusive exponent range of `var` over all terms; {0,0} for the zero
    // polynomial or a variable that does not occur.
    std::pair<int, int> exp_range(std::string_view var) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator-() const;
    MultiPoly& scale(const BigRat& c);
    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Substitutes var := 1 (drops that variable's exponents).
    MultiPoly subst_one(std::string_view var) const;
    // Substitutes var := c.
    MultiPoly subst_rat(std::string_view var, const BigRat& c) const;
    // Divided difference: p |-> var * (p - p|_{var=1}) / (var - 1), i.e.
    // var^k |-> var + var^2 + ... + var^k. Rejects negative powers of `var`.
    MultiPoly divided_difference(std::string_view var) const;
    // Exact division by (var - 1); throws if the remainder is nonzero.
    MultiPoly div_var_minus_one_exact(std::string_view var) const;
    // Multiplies by var^k. For k < 0 on a non-Laurent variable this is exact
    // monomial division and throws if any exponent would go negative.
    MultiPoly shift_var(std::string_view var, int k) const;
    MultiPoly derivative(std::string_view var) const;
    MultiPoly truncate_var(std::string_view var, int max_deg) const;

    // Inverse in the coefficient ring: nonzero constants always, and single
    // Laurent monomials when every non-Laurent exponent is zero.
    std::optional<MultiPoly> try_inverse() const;

    bool has_negative_coeff() const;

    // Coefficient of the monomial with the given exponents (absent vars = 0).
    BigRat coeff(std::initializer_list<std::pair<std::string_view, int>> exps) const;

    // Splits into coefficients of var^k (the results no longer involve `var`).
    std::map<int, MultiPoly> collect_var(std::string_view var) const;

    std::string str() const;

private:
    void add_term(const Exps& e, const BigRat& c);
    void check_same_vars(const MultiPoly& o) const;

    VarTable vars_;
    TermMap terms_;
};

}  // namespace tamarilab
