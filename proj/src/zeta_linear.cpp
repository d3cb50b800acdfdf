#include "kempner/zeta_linear.hpp"

#include <sstream>
#include <stdexcept>

namespace kempner {

ZetaLinear ZetaLinear::zeta(int n, const mpq_class& q) {
  if (n < 2) throw std::domain_error("zeta(n) needs n >= 2");
  ZetaLinear z;
  if (q != 0) z.zeta_[n] = q;
  return z;
}

mpq_class ZetaLinear::zeta_coefficient(int n) const {
  auto it = zeta_.find(n);
  return it == zeta_.end() ? mpq_class(0) : it->second;
}

int ZetaLinear::max_zeta_argument() const { return zeta_.empty() ? 0 : zeta_.rbegin()->first; }

void ZetaLinear::prune(int n) {
  auto it = zeta_.find(n);
  if (it != zeta_.end() && it->second == 0) zeta_.erase(it);
}

ZetaLinear& ZetaLinear::operator+=(const ZetaLinear& o) {
  rational_ += o.rational_;
  for (const auto& [n, q] : o.zeta_) {
    zeta_[n] += q;
    prune(n);
  }
  return *this;
}

ZetaLinear& ZetaLinear::operator-=(const ZetaLinear& o) {
  rational_ -= o.rational_;
  for (const auto& [n, q] : o.zeta_) {
    zeta_[n] -= q;
    prune(n);
  }
  return *this;
}

ZetaLinear& ZetaLinear::operator*=(const mpq_class& q) {
  if (q == 0) {
    rational_ = 0;
    zeta_.clear();
    return *this;
  }
  rational_ *= q;
  for (auto& [n, c] : zeta_) c *= q;
  return *this;
}

std::string ZetaLinear::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto put = [&](const mpq_class& q, const std::string& tail) {
    mpq_class a = abs(q);
    if (first) {
      if (q < 0) os << '-';
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    if (tail.empty())
      os << a.get_str();
    else if (a == 1)
      os << tail;
    else
      os << a.get_str() << '*' << tail;
    first = false;
  };
  if (rational_ != 0 || zeta_.empty()) put(rational_, "");
  for (const auto& [n, q] : zeta_) put(q, "zeta(" + std::to_string(n) + ")");
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ZetaLinear& z) { return os << z.to_string(); }

}  // namespace kempner
