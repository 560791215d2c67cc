#include "gbn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gbn {

ModelVariable ModelVariable::a(int i) {
    if (i < 1) throw AlgebraError("a_i needs i >= 1");
    return {Kind::NodeVariance, i, 0};
}

ModelVariable ModelVariable::lambda(int i, int j) {
    if (!(1 <= i && i < j)) throw AlgebraError("l(i,j) needs 1 <= i < j");
    return {Kind::EdgeWeight, i, j};
}

ModelVariable ModelVariable::sigma(int i, int j) {
    if (i < 1 || j < 1) throw AlgebraError("s(i,j) needs i, j >= 1");
    if (i > j) std::swap(i, j);
    return {Kind::Covariance, i, j};
}

std::string ModelVariable::str() const {
    switch (kind) {
    case Kind::NodeVariance: return "a" + std::to_string(i);
    case Kind::EdgeWeight:
        return "l(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Covariance:
        return "s(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return {};
}

int monomial_degree(const Monomial& m) {
    int d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            out.push_back({a[i].first, a[i].second + b[j].second});
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    // Lex: the monomial with the higher power on the earliest differing
    // variable is the larger one.
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) return false; // a has earlier variable
        if (b[j].first < a[i].first) return true;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i, ++j;
    }
    return i == a.size() && j < b.size() ? false
                                         : (j == b.size() && i < a.size());
}

ModelPolynomial::ModelPolynomial(long c) {
    if (c != 0) terms_[{}] = c;
}

ModelPolynomial::ModelPolynomial(const mpz_class& c) {
    if (c != 0) terms_[{}] = c;
}

ModelPolynomial::ModelPolynomial(ModelVariable v) { terms_[{{v, 1}}] = 1; }

ModelPolynomial::ModelPolynomial(Monomial m, mpz_class c) {
    if (c != 0) terms_[std::move(m)] = std::move(c);
}

int ModelPolynomial::total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

void ModelPolynomial::add_term(const Monomial& m, const mpz_class& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ModelPolynomial ModelPolynomial::operator-() const {
    ModelPolynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

ModelPolynomial& ModelPolynomial::operator+=(const ModelPolynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ModelPolynomial& ModelPolynomial::operator-=(const ModelPolynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ModelPolynomial operator*(const ModelPolynomial& a, const ModelPolynomial& b) {
    ModelPolynomial out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            out.add_term(monomial_mul(ma, mb), ca * cb);
    return out;
}

std::string ModelPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, mpz_class>*> order;
    order.reserve(terms_.size());
    for (auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* x, auto* y) {
        return monomial_less(y->first, x->first); // decreasing
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : order) {
        const auto& [m, c] = *t;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool need_star = false;
        if (mag != 1 || m.empty()) {
            out << mag.get_str();
            need_star = true;
        }
        for (auto& [v, e] : m) {
            if (need_star) out << "*";
            out << v.str();
            if (e > 1) out << "^" << e;
            need_star = true;
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char c) {
        if (peek() != c)
            throw AlgebraError("polynomial parse error: expected '" +
                               std::string(1, c) + "' at offset " +
                               std::to_string(pos));
        ++pos;
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw AlgebraError("polynomial parse error: expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    // coefficient? factor (* factor)*
    ModelPolynomial term() {
        Monomial mono;
        mpz_class coeff = 1;
        bool first = true;
        while (true) {
            char c = peek();
            if (first && std::isdigit((unsigned char)c)) {
                coeff = mpz_class(std::to_string(integer()));
            } else if (c == 'a' || c == 'l' || c == 's') {
                ModelVariable v = variable();
                int e = 1;
                if (peek() == '^') {
                    ++pos;
                    e = (int)integer();
                }
                mono = monomial_mul(mono, Monomial{{v, e}});
            } else {
                throw AlgebraError("polynomial parse error at offset " +
                                   std::to_string(pos));
            }
            first = false;
            if (peek() == '*') ++pos;
            else break;
        }
        return ModelPolynomial(std::move(mono), coeff);
    }

    ModelVariable variable() {
        char c = s[pos++];
        if (c == 'a') return ModelVariable::a((int)integer());
        expect('(');
        int i = (int)integer();
        expect(',');
        int j = (int)integer();
        expect(')');
        return c == 'l' ? ModelVariable::lambda(i, j)
                        : ModelVariable::sigma(i, j);
    }

    ModelPolynomial parse() {
        ModelPolynomial out;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos;
        } else if (peek() == '+') {
            ++pos;
        }
        if (peek() == '0' && pos + 1 >= s.size()) return out;
        while (true) {
            ModelPolynomial t = term();
            if (neg) out -= t;
            else out += t;
            if (eof()) break;
            char c = peek();
            if (c == '+') neg = false;
            else if (c == '-') neg = true;
            else
                throw AlgebraError("polynomial parse error at offset " +
                                   std::to_string(pos));
            ++pos;
        }
        return out;
    }
};

} // namespace

ModelPolynomial ModelPolynomial::parse(const std::string& text) {
    Parser p(text);
    if (p.eof()) return {};
    return p.parse();
}

mpq_class ModelPolynomial::evaluate(
    const std::function<mpq_class(const ModelVariable&)>& val) const {
    mpq_class sum = 0;
    for (auto& [m, c] : terms_) {
        mpq_class prod(c);
        for (auto& [v, e] : m) {
            mpq_class x = val(v);
            for (int k = 0; k < e; ++k) prod *= x;
        }
        sum += prod;
    }
    return sum;
}

void ModelPolynomial::for_each_variable(
    const std::function<void(const ModelVariable&)>& f) const {
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m) f(v);
}

ModelPolynomial substitute_sigma(
    const ModelPolynomial& p,
    const std::function<const ModelPolynomial*(int, int)>& image) {
    ModelPolynomial out;
    for (auto& [m, c] : p.terms()) {
        ModelPolynomial prod{c};
        for (auto& [v, e] : m) {
            if (v.kind != ModelVariable::Kind::Covariance)
                throw AlgebraError("substitute_sigma: non-sigma variable " + v.str());
            const ModelPolynomial* img = image(v.i, v.j);
            if (!img)
                throw AlgebraError("substitute_sigma: unmapped variable " + v.str());
            for (int k = 0; k < e; ++k) prod = prod * *img;
        }
        out += prod;
    }
    return out;
}

} // namespace gbn
