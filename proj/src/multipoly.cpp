#include "tamarilab/multipoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tamarilab {

VarTable::VarTable(std::initializer_list<std::string> names)
    : names_(names), laurent_(names.size(), false) {
    if (names_.size() > MultiPoly::kMaxVars) throw std::invalid_argument("VarTable: too many variables");
}

VarTable VarTable::with_laurent(std::vector<std::string> names,
                                std::vector<std::string> laurent_names) {
    if (names.size() > MultiPoly::kMaxVars) throw std::invalid_argument("VarTable: too many variables");
    VarTable t;
    t.names_ = std::move(names);
    t.laurent_.assign(t.names_.size(), false);
    for (const auto& ln : laurent_names) {
        int i = t.index(ln);
        if (i < 0) throw std::invalid_argument("VarTable: laurent name not in table: " + ln);
        t.laurent_[static_cast<std::size_t>(i)] = true;
    }
    return t;
}

int VarTable::index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

int VarTable::require(std::string_view name) const {
    int i = index(name);
    if (i < 0) throw std::invalid_argument("variable not in table: " + std::string(name));
    return i;
}

void MultiPoly::add_term(const Exps& e, const BigRat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
    if (!(vars_ == o.vars_)) throw std::invalid_argument("MultiPoly: mismatched variable tables");
}

MultiPoly MultiPoly::constant(const VarTable& vars, BigRat c) {
    MultiPoly p(vars);
    if (c != 0) p.terms_.emplace(Exps{0, 0, 0, 0}, std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(const VarTable& vars, std::string_view name, int exp) {
    MultiPoly p(vars);
    int i = vars.require(name);
    if (exp < 0 && !vars.laurent(static_cast<std::size_t>(i)))
        throw std::invalid_argument("MultiPoly: negative power of non-Laurent variable " + std::string(name));
    Exps e{0, 0, 0, 0};
    e[static_cast<std::size_t>(i)] = exp;
    p.terms_.emplace(e, BigRat(1));
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exps{0, 0, 0, 0};
}

BigRat MultiPoly::constant_value() const {
    if (terms_.empty()) return BigRat(0);
    if (!is_constant()) throw std::logic_error("MultiPoly: not a constant");
    return terms_.begin()->second;
}

std::pair<int, int> MultiPoly::exp_range(std::string_view var) const {
    int v = vars_.require(var);
    if (terms_.empty()) return {0, 0};
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<std::size_t>(v)];
        if (first) { lo = hi = k; first = false; }
        else { lo = std::min(lo, k); hi = std::max(hi, k); }
    }
    return {lo, hi};
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_vars(b);
    MultiPoly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    BigRat prod;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exps e;
            for (std::size_t i = 0; i < MultiPoly::kMaxVars; ++i) e[i] = ea[i] + eb[i];
            prod = ca * cb;
            r.add_term(e, prod);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::scale(const BigRat& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::subst_one(std::string_view var) const {
    int v = vars_.require(var);
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        f[static_cast<std::size_t>(v)] = 0;
        r.add_term(f, c);
    }
    return r;
}

MultiPoly MultiPoly::subst_rat(std::string_view var, const BigRat& val) const {
    int v = vars_.require(var);
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        int k = f[static_cast<std::size_t>(v)];
        f[static_cast<std::size_t>(v)] = 0;
        r.add_term(f, c * pow_rat(val, k));
    }
    return r;
}

MultiPoly MultiPoly::divided_difference(std::string_view var) const {
    std::size_t v = static_cast<std::size_t>(vars_.require(var));
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        int k = e[v];
        if (k < 0)
            throw std::invalid_argument("divided_difference: Laurent input in the difference variable");
        Exps f = e;
        for (int j = 1; j <= k; ++j) {
            f[v] = j;
            r.add_term(f, c);
        }
    }
    return r;
}

MultiPoly MultiPoly::div_var_minus_one_exact(std::string_view var) const {
    // Group terms by the exponents of the other variables, then do synthetic
    // division by (var - 1) within each group: the quotient coefficient at
    // var^(k-1) is the suffix sum of input coefficients at powers >= k, and
    // exactness means each group's coefficients sum to zero.
    std::size_t v = static_cast<std::size_t>(vars_.require(var));
    std::map<Exps, std::map<int, BigRat>> groups;
    for (const auto& [e, c] : terms_) {
        Exps key = e;
        int k = key[v];
        key[v] = 0;
        groups[key][k] = c;
    }
    MultiPoly r(vars_);
    for (const auto& [key, coeffs] : groups) {
        const int maxk = coeffs.rbegin()->first;
        const int mink = coeffs.begin()->first;
        // Quotient coefficient at var^j is the suffix sum of inputs above j;
        // the full sum (the group evaluated at var = 1) is the remainder.
        BigRat running(0);
        for (int j = maxk - 1; j >= mink; --j) {
            auto ci = coeffs.find(j + 1);
            if (ci != coeffs.end()) running += ci->second;
            if (running != 0) {
                Exps f = key;
                f[v] = j;
                r.add_term(f, running);
            }
        }
        auto lo = coeffs.find(mink);
        if (lo != coeffs.end()) running += lo->second;
        if (running != 0)
            throw std::logic_error("div_var_minus_one_exact: nonzero remainder (polynomial not divisible by " +
                                   std::string(var) + " - 1)");
    }
    return r;
}

MultiPoly MultiPoly::shift_var(std::string_view var, int k) const {
    std::size_t v = static_cast<std::size_t>(vars_.require(var));
    bool laurent = vars_.laurent(v);
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        f[v] += k;
        if (f[v] < 0 && !laurent)
            throw std::logic_error("shift_var: inexact monomial division by " + std::string(var));
        r.terms_.emplace(f, c);
    }
    return r;
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
    std::size_t v = static_cast<std::size_t>(vars_.require(var));
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        int k = e[v];
        if (k == 0) continue;
        Exps f = e;
        f[v] = k - 1;
        r.add_term(f, c * BigRat(k));
    }
    return r;
}

MultiPoly MultiPoly::truncate_var(std::string_view var, int max_deg) const {
    std::size_t v = static_cast<std::size_t>(vars_.require(var));
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (e[v] <= max_deg) r.terms_.emplace(e, c);
    return r;
}

std::optional<MultiPoly> MultiPoly::try_inverse() const {
    if (terms_.empty()) return std::nullopt;
    if (terms_.size() != 1) return std::nullopt;
    const auto& [e, c] = *terms_.begin();
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (e[i] != 0 && !vars_.laurent(i)) return std::nullopt;
    MultiPoly r(vars_);
    Exps f{0, 0, 0, 0};
    for (std::size_t i = 0; i < kMaxVars; ++i) f[i] = -e[i];
    r.terms_.emplace(f, make_rat(BigInt(c.get_den()), BigInt(c.get_num())));
    return r;
}

bool MultiPoly::has_negative_coeff() const {
    for (const auto& [e, c] : terms_)
        if (c < 0) return true;
    return false;
}

BigRat MultiPoly::coeff(std::initializer_list<std::pair<std::string_view, int>> exps) const {
    Exps e{0, 0, 0, 0};
    for (const auto& [name, k] : exps) e[static_cast<std::size_t>(vars_.require(name))] = k;
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRat(0) : it->second;
}

std::map<int, MultiPoly> MultiPoly::collect_var(std::string_view var) const {
    const auto v = static_cast<std::size_t>(vars_.require(var));
    std::map<int, MultiPoly> out;
    for (const auto& [e, c] : terms_) {
        auto [it, fresh] = out.try_emplace(e[v], vars_);
        Exps f = e;
        f[v] = 0;
        it->second.add_term(f, c);
        (void)fresh;
    }
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigRat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        std::ostringstream vs;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (any_var) vs << "*";
            vs << vars_.name(i);
            if (e[i] != 1) vs << "^" << e[i];
            any_var = true;
        }
        if (!any_var) {
            os << rat_string(a);
        } else {
            if (a != 1) os << rat_string(a) << "*";
            os << vs.str();
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    std::string_view s;
    std::size_t i = 0;
    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool done() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return s[i]; }
    char get() { skip_ws(); return s[i++]; }
};

std::string read_number(Lexer& lx) {
    lx.skip_ws();
    std::string out;
    if (lx.i < lx.s.size() && (lx.s[lx.i] == '-' || lx.s[lx.i] == '+')) out += lx.s[lx.i++];
    while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) out += lx.s[lx.i++];
    if (lx.i < lx.s.size() && lx.s[lx.i] == '/') {
        out += lx.s[lx.i++];
        while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) out += lx.s[lx.i++];
    }
    return out;
}

std::string read_ident(Lexer& lx) {
    lx.skip_ws();
    std::string out;
    while (lx.i < lx.s.size() &&
           (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_')) {
        if (std::isdigit(static_cast<unsigned char>(lx.s[lx.i])) && out.empty()) break;
        out += lx.s[lx.i++];
    }
    return out;
}

}  // namespace

MultiPoly MultiPoly::parse(const VarTable& vars, std::string_view expr) {
    MultiPoly result(vars);
    Lexer lx{expr};
    bool first_term = true;
    while (!lx.done()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.get();
            if (c == '-') sign = -1;
        } else if (!first_term) {
            throw std::invalid_argument("MultiPoly::parse: expected '+' or '-' near offset " + std::to_string(lx.i));
        }
        first_term = false;

        BigRat coef(sign);
        Exps e{0, 0, 0, 0};
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            if (lx.done()) break;
            char p = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                coef *= parse_rat(read_number(lx));
                saw_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
                std::string name = read_ident(lx);
                int vi = vars.require(name);
                int exp = 1;
                if (!lx.done() && lx.peek() == '^') {
                    lx.get();
                    std::string n = read_number(lx);
                    if (n.empty()) throw std::invalid_argument("MultiPoly::parse: bad exponent");
                    exp = std::stoi(n);
                }
                if (exp < 0 && !vars.laurent(static_cast<std::size_t>(vi)))
                    throw std::invalid_argument("MultiPoly::parse: negative power of non-Laurent variable " + name);
                e[static_cast<std::size_t>(vi)] += exp;
                saw_factor = true;
            } else {
                throw std::invalid_argument("MultiPoly::parse: unexpected character near offset " + std::to_string(lx.i));
            }
            expect_factor = false;
            if (!lx.done() && lx.peek() == '*') {
                lx.get();
                expect_factor = true;
            }
        }
        if (!saw_factor) throw std::invalid_argument("MultiPoly::parse: empty term");
        result.add_term(e, coef);
    }
    return result;
}

}  // namespace tamarilab
