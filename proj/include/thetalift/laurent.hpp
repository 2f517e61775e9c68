#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetalift {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
    return r;
}

}  // namespace detail

/// Exact Laurent polynomial with integer coefficients.
///
/// Exponents are stored in half-units so that substitutions such as
/// A^-4 -> t stay exact; a polynomial is "integral" when every stored
/// exponent is even. Zero coefficients are never stored.
class LaurentPoly {
  public:
    using Coeff = std::int64_t;

    LaurentPoly() = default;
    explicit LaurentPoly(std::string variable) : var_(std::move(variable)) {}

    static LaurentPoly constant(Coeff c, std::string variable = "t") {
        return monomial(c, 0, std::move(variable));
    }

    static LaurentPoly monomial(Coeff c, int exponent, std::string variable = "t") {
        return half_monomial(c, 2 * exponent, std::move(variable));
    }

    static LaurentPoly half_monomial(Coeff c, int half_exponent, std::string variable = "t") {
        LaurentPoly p(std::move(variable));
        if (c != 0) p.terms_[half_exponent] = c;
        return p;
    }

    /// Builds from (integer exponent, coefficient) pairs; repeated exponents accumulate.
    static LaurentPoly from_terms(std::initializer_list<std::pair<int, Coeff>> terms, std::string variable = "t") {
        LaurentPoly p(std::move(variable));
        for (auto [e, c] : terms) p += monomial(c, e, p.var_);
        return p;
    }

    /// Builds from dense coefficients c[0] + c[1] t + ... shifted by t^low.
    static LaurentPoly from_dense(const std::vector<Coeff>& coeffs, int low = 0, std::string variable = "t") {
        LaurentPoly p(std::move(variable));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) p.terms_[2 * (low + static_cast<int>(i))] = coeffs[i];
        return p;
    }

    const std::string& variable() const { return var_; }
    LaurentPoly with_variable(std::string v) const {
        LaurentPoly p = *this;
        p.var_ = std::move(v);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Coeff>& half_terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool integral() const {
        for (const auto& [h, c] : terms_)
            if (h % 2 != 0) return false;
        return true;
    }

    Coeff coefficient(int exponent) const { return half_coefficient(2 * exponent); }
    Coeff half_coefficient(int half_exponent) const {
        auto it = terms_.find(half_exponent);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Lowest / highest exponent; requires a nonzero integral polynomial.
    int min_exponent() const { return require_integral_nonzero(), terms_.begin()->first / 2; }
    int max_exponent() const { return require_integral_nonzero(), terms_.rbegin()->first / 2; }
    Coeff leading_coefficient() const { return require_integral_nonzero(), terms_.rbegin()->second; }

    /// Multiplies by t^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly p(var_);
        for (const auto& [h, c] : terms_) p.terms_[h + 2 * k] = c;
        return p;
    }

    /// t -> 1/t
    LaurentPoly inverted() const {
        LaurentPoly p(var_);
        for (const auto& [h, c] : terms_) p.terms_[-h] = c;
        return p;
    }

    /// Substitutes x -> y^(num/den), renaming the variable. Every resulting
    /// exponent must land on a half-unit.
    LaurentPoly substituted(int num, int den, std::string new_variable) const {
        if (den == 0) throw std::invalid_argument("zero denominator in substitution");
        LaurentPoly p(std::move(new_variable));
        for (const auto& [h, c] : terms_) {
            long long scaled = static_cast<long long>(h) * num;
            if (scaled % den != 0) throw std::domain_error("substitution leaves a fractional exponent");
            p.terms_[static_cast<int>(scaled / den)] = c;
        }
        return p;
    }

    /// Exact evaluation at an integer. Negative exponents are only allowed at x = +-1.
    Coeff evaluate(Coeff x) const {
        if (!integral()) throw std::domain_error("cannot evaluate a polynomial with half-integer exponents");
        Coeff total = 0;
        for (const auto& [h, c] : terms_) {
            int e = h / 2;
            if (e < 0 && x != 1 && x != -1) throw std::domain_error("negative exponent at a non-unit point");
            Coeff pw = 1;
            if (x == 1 || x == -1) {
                pw = (x == -1 && (e % 2 != 0)) ? -1 : 1;
            } else {
                for (int i = 0; i < e; ++i) pw = detail::checked_mul(pw, x);
            }
            total = detail::checked_add(total, detail::checked_mul(c, pw));
        }
        return total;
    }

    /// Dense coefficient vector from min_exponent() upward.
    std::vector<Coeff> dense() const {
        if (is_zero()) return {};
        std::vector<Coeff> out(static_cast<std::size_t>(max_exponent() - min_exponent() + 1), 0);
        int lo = min_exponent();
        for (const auto& [h, c] : terms_) out[static_cast<std::size_t>(h / 2 - lo)] = c;
        return out;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [h, c] : o.terms_) add_term(h, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [h, c] : o.terms_) add_term(h, detail::checked_mul(c, -1));
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly& operator*=(Coeff k) {
        if (k == 0) {
            terms_.clear();
        } else {
            for (auto& [h, c] : terms_) c = detail::checked_mul(c, k);
        }
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= -1; }
    friend LaurentPoly operator*(LaurentPoly a, Coeff k) { return a *= k; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly p(a.var_);
        for (const auto& [ha, ca] : a.terms_)
            for (const auto& [hb, cb] : b.terms_) p.add_term(ha + hb, detail::checked_mul(ca, cb));
        return p;
    }

    LaurentPoly pow(unsigned n) const {
        LaurentPoly result = constant(1, var_), base = *this;
        while (n) {
            if (n & 1U) result *= base;
            n >>= 1U;
            if (n) base *= base;
        }
        return result;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    /// Lexicographic order on the ascending (exponent, coefficient) sequence.
    friend bool lex_less(const LaurentPoly& a, const LaurentPoly& b) {
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
            if (*ia != *ib) return *ia < *ib;
        }
        return ia == a.terms_.end() && ib != b.terms_.end();
    }

    /// Stable text form, ascending exponents: "1-1t+1t^2", "-1t^-4+1t^-3".
    /// Half-integer exponents print as e.g. "t^3/2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [h, c] : terms_) {
            if (!first && c > 0) out += '+';
            out += std::to_string(c);
            first = false;
            if (h == 0) continue;
            out += var_;
            if (h == 2) continue;
            out += '^';
            out += (h % 2 == 0) ? std::to_string(h / 2) : std::to_string(h) + "/2";
        }
        return out;
    }

  private:
    void add_term(int h, Coeff c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(h, c);
        if (!inserted) {
            it->second = detail::checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    void require_integral_nonzero() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no degree");
        if (!integral()) throw std::domain_error("polynomial has half-integer exponents");
    }

    std::map<int, Coeff> terms_;
    std::string var_ = "t";
};

/// Divides out the lowest power of t and makes the top coefficient positive.
/// This is the usual normalization of the Alexander polynomial up to units.
inline LaurentPoly normalize_unit(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    LaurentPoly q = p.shifted(-p.min_exponent());
    if (q.leading_coefficient() < 0) q *= -1;
    return q;
}

/// Chooses the lexicographically smaller of V(t), V(1/t).
inline LaurentPoly mirror_canonical(const LaurentPoly& v) {
    LaurentPoly m = v.inverted();
    return lex_less(m, v) ? m : v;
}

}  // namespace thetalift
