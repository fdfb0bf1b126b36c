#include "courant/polynomial.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace courant {

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

Polynomial::Polynomial(int nvars, const Rational& c) : nvars_(nvars) {
    if (c != 0) terms_[Monomial(nvars, 0)] = c;
}

Polynomial Polynomial::variable(int nvars, int i, int power) {
    if (i < 0 || i >= nvars) throw std::invalid_argument("variable index out of range");
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m[i] = power;
    p.terms_[m] = Rational(1);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Monomial(nvars_, 0);
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(nvars_);
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        r.add_term(d, c * Rational(m[var]));
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("eval: wrong point dimension");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i) {
            for (int k = 0; k < m[i]; ++k) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const {
    if (static_cast<int>(subs.size()) != nvars_) throw std::invalid_argument("compose: wrong substitution count");
    int target_nvars = subs.empty() ? 0 : subs[0].nvars();
    Polynomial acc(target_nvars);
    for (const auto& [m, c] : terms_) {
        Polynomial t(target_nvars, c);
        for (int i = 0; i < nvars_; ++i) {
            for (int k = 0; k < m[i]; ++k) t = t * subs[i];
        }
        acc += t;
    }
    return acc;
}

namespace {

struct Token {
    enum Kind { Number, Name, Op, End } kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
            return {Token::Number, s_.substr(start, pos_ - start)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
                ++pos_;
            }
            return {Token::Name, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        return {Token::Op, std::string(1, c)};
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

class Parser {
public:
    Parser(const Chart& chart, const std::string& text) : chart_(chart), lex_(text) { advance(); }

    Polynomial parse_expr() {
        Polynomial acc(chart_.dim());
        int sign = 1;
        if (cur_.kind == Token::Op && (cur_.text == "+" || cur_.text == "-")) {
            if (cur_.text == "-") sign = -1;
            advance();
        }
        acc += parse_term() * Rational(sign);
        while (cur_.kind == Token::Op && (cur_.text == "+" || cur_.text == "-")) {
            int s = cur_.text == "-" ? -1 : 1;
            advance();
            acc += parse_term() * Rational(s);
        }
        return acc;
    }

    void expect_end() const {
        if (cur_.kind != Token::End) throw std::invalid_argument("polynomial parse error near '" + cur_.text + "'");
    }

private:
    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (cur_.kind == Token::Op && cur_.text == "*") {
            advance();
            acc = acc * parse_factor();
        }
        return acc;
    }

    Polynomial parse_factor() {
        if (cur_.kind == Token::Op && cur_.text == "-") {
            advance();
            return -parse_factor();
        }
        if (cur_.kind == Token::Op && cur_.text == "(") {
            advance();
            Polynomial inner = parse_expr();
            if (!(cur_.kind == Token::Op && cur_.text == ")")) throw std::invalid_argument("expected ')'");
            advance();
            return maybe_power(inner);
        }
        if (cur_.kind == Token::Number) {
            Rational q = parse_rational(cur_.text);
            advance();
            return Polynomial(chart_.dim(), q);
        }
        if (cur_.kind == Token::Name) {
            int idx = chart_.index(cur_.text);
            advance();
            return maybe_power(Polynomial::variable(chart_.dim(), idx));
        }
        throw std::invalid_argument("polynomial parse error near '" + cur_.text + "'");
    }

    Polynomial maybe_power(Polynomial base) {
        if (cur_.kind == Token::Op && cur_.text == "^") {
            advance();
            if (cur_.kind != Token::Number) throw std::invalid_argument("expected integer exponent");
            long e = std::stol(cur_.text);
            if (e < 0) throw std::invalid_argument("negative exponents not supported");
            advance();
            Polynomial acc(base.nvars(), Rational(1));
            for (long k = 0; k < e; ++k) acc = acc * base;
            return acc;
        }
        return base;
    }

    void advance() { cur_ = lex_.next(); }

    const Chart& chart_;
    Lexer lex_;
    Token cur_;
};

}  // namespace

Polynomial Polynomial::parse(const Chart& chart, const std::string& text) {
    Parser p(chart, text);
    Polynomial r = p.parse_expr();
    p.expect_end();
    return r;
}

std::string Polynomial::str(const Chart& chart) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Leading term first: iterate in descending graded-lex order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        bool has_vars = std::accumulate(m.begin(), m.end(), 0) > 0;
        if (!has_vars) {
            out << a.get_str();
            continue;
        }
        bool wrote = false;
        if (a != 1) {
            out << a.get_str();
            wrote = true;
        }
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (wrote) out << "*";
            out << chart.name(i);
            if (m[i] > 1) out << "^" << m[i];
            wrote = true;
        }
    }
    return out.str();
}

PolyMatrix poly_matrix_zero(int rows, int cols, int nvars) {
    return PolyMatrix(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
}

PolyMatrix poly_matrix_identity(int n, int nvars) {
    PolyMatrix m = poly_matrix_zero(n, n, nvars);
    for (int i = 0; i < n; ++i) m[i][i] = Polynomial(nvars, Rational(1));
    return m;
}

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
    int r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    int nvars = r && !a[0].empty() ? a[0][0].nvars() : 0;
    PolyMatrix out = poly_matrix_zero(r, c, nvars);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            for (int l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
    return out;
}

PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
    return out;
}

PolyMatrix poly_matrix_sub(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

PolyMatrix poly_matrix_transpose(const PolyMatrix& a) {
    if (a.empty()) return a;
    PolyMatrix out(a[0].size(), std::vector<Polynomial>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
    return out;
}

bool poly_matrix_equal(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

bool poly_matrix_is_zero(const PolyMatrix& a) {
    for (const auto& row : a)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

namespace {

// Determinant of the submatrix given by rows [row..n) and the column set mask,
// by expansion along the first remaining row.
Polynomial det_rec(const PolyMatrix& a, int row, unsigned mask, std::map<unsigned, Polynomial>& memo) {
    int n = a.size();
    if (row == n) return Polynomial(a.empty() ? 0 : a[0][0].nvars(), Rational(1));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Polynomial acc(a[0][0].nvars());
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        if (!a[row][j].is_zero()) {
            Polynomial sub = det_rec(a, row + 1, mask & ~(1u << j), memo);
            acc += a[row][j] * sub * Rational(sign);
        }
        sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
}

}  // namespace

Polynomial poly_matrix_det(const PolyMatrix& a) {
    int n = a.size();
    if (n == 0) throw std::invalid_argument("det of empty matrix");
    if (n > 16) throw std::invalid_argument("det: matrix too large");
    std::map<unsigned, Polynomial> memo;
    return det_rec(a, 0, (1u << n) - 1, memo);
}

Polynomial poly_restrict(const Polynomial& p, const std::vector<int>& base_coords, int quotient_dim) {
    Polynomial out(quotient_dim);
    for (const auto& [m, c] : p.terms()) {
        Monomial q(quotient_dim, 0);
        int total = std::accumulate(m.begin(), m.end(), 0);
        int base_total = 0;
        for (int bi = 0; bi < quotient_dim; ++bi) {
            q[bi] = m[base_coords[bi]];
            base_total += q[bi];
        }
        if (base_total != total) throw std::domain_error("polynomial depends on a dropped coordinate");
        out.add_term(q, c);
    }
    return out;
}

Polynomial poly_inject(const Polynomial& p, const std::vector<int>& base_coords, int total_dim) {
    Polynomial out(total_dim);
    for (const auto& [m, c] : p.terms()) {
        Monomial q(total_dim, 0);
        for (size_t bi = 0; bi < m.size(); ++bi) q[base_coords[bi]] = m[bi];
        out.add_term(q, c);
    }
    return out;
}

PolyMatrix poly_matrix_adjugate(const PolyMatrix& a) {
    int n = a.size();
    int nvars = a[0][0].nvars();
    PolyMatrix adj = poly_matrix_zero(n, n, nvars);
    if (n == 1) {
        adj[0][0] = Polynomial(nvars, Rational(1));
        return adj;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            PolyMatrix minor;
            minor.reserve(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<Polynomial> row;
                row.reserve(n - 1);
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    row.push_back(a[r][c]);
                }
                minor.push_back(std::move(row));
            }
            Polynomial cof = poly_matrix_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj[j][i] = cof;  // transpose of cofactor matrix
        }
    }
    return adj;
}

}  // namespace courant
