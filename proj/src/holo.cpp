#include "ruledsl/holo.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "ruledsl/error.hpp"

namespace ruledsl {

HoloField::HoloField(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

HoloField HoloField::monomial(int degree, cplx c) {
  std::vector<cplx> cf(std::size_t(degree) + 1, 0.0);
  cf.back() = c;
  return HoloField(std::move(cf));
}

int HoloField::degree() const {
  for (int k = int(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[std::size_t(k)] != 0.0) return k;
  }
  return -1;
}

cplx HoloField::p(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx HoloField::dp(cplx z) const {
  cplx acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * z + double(k) * coeffs_[k];
  return acc;
}

HoloField HoloField::derivative() const {
  std::vector<cplx> cf;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) cf.push_back(double(k) * coeffs_[k]);
  return HoloField(std::move(cf));
}

HoloField::Value HoloField::eval(double s, double t) const {
  const cplx z(s, t);
  const cplx w = p(z);
  const cplx dw = dp(z);
  // d/ds = p', d/dt = i p'
  return Value{w.real(), w.imag(), dw.real(), -dw.imag(), dw.imag(), dw.real()};
}

cplx parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  if (text.empty()) throw Error(Errc::ConfigError, "empty complex literal");
  auto fail = [&] { return Error(Errc::ConfigError, "bad complex literal '" + raw + "'"); };
  auto parse_real = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (...) {
      throw fail();
    }
    if (used != s.size()) throw fail();
    return v;
  };
  if (text.back() != 'i') return {parse_real(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not part of an exponent
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      return {parse_real(body.substr(0, k)), parse_real(body.substr(k))};
    }
  }
  return {0.0, parse_real(body)};
}

HoloField HoloField::parse(const std::string& text) {
  std::vector<cplx> cf;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) cf.push_back(parse_complex(item));
  return HoloField(std::move(cf));
}

std::string HoloField::to_string() const {
  std::string out;
  char buf[96];
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", coeffs_[k].real(), coeffs_[k].imag());
    out += buf;
  }
  return out;
}

}  // namespace ruledsl
