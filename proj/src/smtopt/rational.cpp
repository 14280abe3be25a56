// Copyright 2026 The smtopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smtopt/rational.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rat pow10(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rat(p);
  Rat r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Rat> try_parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rat value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    value = Rat(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      auto exp_text = text.substr(e + 1);
      if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) return std::nullopt;
      if (exponent > 100000 || exponent < -100000) return std::nullopt;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
    if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;
    std::string digits = std::string(int_part) + std::string(frac_part);
    value = Rat(mpz_class(digits, 10));
    value *= pow10(exponent - static_cast<long>(frac_part.size()));
  }
  if (negative) value = -value;
  return value;
}

Rat parse_rat(std::string_view text) {
  if (auto r = try_parse_rat(text)) return *r;
  throw Error(ErrorCode::kMalformedNumber, "'" + std::string(text) + "'");
}

Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

Rat rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

bool is_integral(const Rat& r) { return r.get_den() == 1; }

Rat pow2(unsigned k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rat(p);
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_decimal(const Rat& r, int digits) {
  Rat abs_value = abs(r);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled;
  mpz_class numerator = abs_value.get_num() * scale;
  mpz_tdiv_q(scaled.get_mpz_t(), numerator.get_mpz_t(), abs_value.get_den_mpz_t());
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  std::string out;
  if (r < 0 && scaled != 0) out += '-';
  out += s.substr(0, s.size() - static_cast<size_t>(digits));
  if (digits > 0) {
    out += '.';
    out += s.substr(s.size() - static_cast<size_t>(digits));
  }
  return out;
}

double to_double(const Rat& r) { return r.get_d(); }

}  // namespace smtopt
