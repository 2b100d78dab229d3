#include "puiseux/seriesval.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "puiseux/errors.hpp"

namespace puiseux {

PuiseuxSeries PuiseuxSeries::monomial(Rational coeff, Rational exponent) {
  PuiseuxSeries s;
  s.add_term(exponent, coeff);
  return s;
}

void PuiseuxSeries::add_term(const Rational& exponent, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.try_emplace(exponent, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt PuiseuxSeries::ramification() const {
  BigInt d = 1;
  for (const auto& [e, c] : terms_) d = lcm(d, BigInt(e.get_den()));
  return d;
}

namespace {

std::string rat_str(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace

std::string PuiseuxSeries::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += rat_str(mag);
      continue;
    }
    if (mag != 1) out += rat_str(mag) + "*";
    out += "T";
    if (e == 1) continue;
    if (e.get_den() == 1 && e > 0) {
      out += "^" + rat_str(e);
    } else {
      out += "^(" + rat_str(e) + ")";
    }
  }
  return out;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

PuiseuxSeries operator-(const PuiseuxSeries& a) {
  PuiseuxSeries out;
  for (const auto& [e, c] : a.terms_) out.add_term(e, -c);
  return out;
}

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries out;
  for (const auto& [e1, c1] : a.terms_) {
    for (const auto& [e2, c2] : b.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        pos_.push_back(i);
      }
    }
    end_pos_ = text.size();
  }

  PuiseuxSeries series() {
    if (chars_.empty()) fail("empty expression");
    PuiseuxSeries out;
    bool first = true;
    while (at_ < chars_.size()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = take() == '-';
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto t = term();
      out = out + (negative ? -t : t);
    }
    return out;
  }

 private:
  char peek() const { return at_ < chars_.size() ? chars_[at_] : '\0'; }
  char take() { return chars_[at_++]; }
  std::size_t here() const { return at_ < pos_.size() ? pos_[at_] : end_pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, {}, here()); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++at_;
  }

  BigInt digits() {
    std::string s;
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += take();
    if (s.empty()) fail("expected digits");
    return BigInt(s);
  }

  Rational rational(bool allow_sign) {
    bool negative = false;
    if (allow_sign && peek() == '-') {
      ++at_;
      negative = true;
    }
    Rational r(digits());
    if (peek() == '/') {
      ++at_;
      BigInt d = digits();
      if (d == 0) fail("zero denominator");
      r /= Rational(d);
    }
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  PuiseuxSeries term() {
    Rational coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = rational(false);
      if (peek() != '*') return PuiseuxSeries::monomial(coeff, 0);
      ++at_;
    }
    expect('T');
    Rational exponent = 1;
    if (peek() == '^') {
      ++at_;
      if (peek() == '(') {
        ++at_;
        exponent = rational(true);
        expect(')');
      } else {
        exponent = Rational(digits());
      }
    }
    return PuiseuxSeries::monomial(coeff, exponent);
  }

  std::vector<char> chars_;
  std::vector<std::size_t> pos_;
  std::size_t end_pos_ = 0;
  std::size_t at_ = 0;
};

}  // namespace

PuiseuxSeries parse_series(std::string_view text) { return Parser(text).series(); }

std::optional<Rational> val_p_series(const PuiseuxSeries& s) {
  if (s.is_zero()) return std::nullopt;
  return s.terms().begin()->first;
}

PuiseuxSeries leading_product(const PuiseuxSeries& s, const PuiseuxSeries& t) {
  if (s.is_zero() || t.is_zero()) return {};
  const auto& [e1, c1] = *s.terms().begin();
  const auto& [e2, c2] = *t.terms().begin();
  return PuiseuxSeries::monomial(c1 * c2, e1 + e2);
}

Presentation monoid_image(const std::vector<PuiseuxSeries>& series, std::string label) {
  std::set<PosRat> vals;
  for (const auto& s : series) {
    auto v = val_p_series(s);
    if (!v) throw DomainError("the zero series has infinite valuation");
    if (*v < 0) throw DomainError("positive valuations required");
    if (*v == 0) continue;
    vals.insert(PosRat::normalize(v->get_num(), v->get_den()));
  }
  if (vals.empty()) throw DomainError("every valuation is 0; the image is trivial");
  return Presentation::finite(std::vector<PosRat>(vals.begin(), vals.end()), std::move(label));
}

}  // namespace puiseux
