#include "opident/freealg.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace opident {

FreeElem::FreeElem(const Rational& c) {
  if (!c.is_zero()) terms_.emplace("", c);
}

FreeElem FreeElem::word(const std::string& w) {
  for (char ch : w) {
    if (ch != 'A' && ch != 'B') throw std::invalid_argument("FreeElem: alphabet is {A, B}");
  }
  FreeElem r;
  r.terms_.emplace(w, Rational(1));
  return r;
}

void FreeElem::add(const std::string& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeElem FreeElem::operator-() const {
  FreeElem r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

FreeElem& FreeElem::operator+=(const FreeElem& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

FreeElem& FreeElem::operator-=(const FreeElem& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

FreeElem& FreeElem::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

FreeElem operator*(const FreeElem& a, const FreeElem& b) {
  FreeElem r;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) r.add(wa + wb, ca * cb);
  }
  return r;
}

FreeElem free_pow(const FreeElem& a, unsigned e) {
  FreeElem r(1);
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

std::string FreeElem::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::string, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.first.size() > y.first.size();
  });
  std::string out;
  for (const auto& [w, c] : sorted) {
    const Rational a = c.sign() < 0 ? -c : c;
    std::string t;
    if (!a.is_one() || w.empty()) t = a.to_string();
    for (char ch : w) {
      if (!t.empty()) t += "*";
      t += ch;
    }
    if (out.empty()) {
      out = (c.sign() < 0 ? "-" : "") + t;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + t;
    }
  }
  return out;
}

}  // namespace opident
