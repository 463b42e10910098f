#include "wigner/bichaos.hpp"

#include <algorithm>

namespace wigner {

BiChaosElement::BiChaosElement(GridSpec grid) : grid_(grid) {}

BiChaosElement BiChaosElement::constant(GridSpec grid, Scalar value) {
  BiChaosElement x(grid);
  x.add(SplitKernel(Kernel::scalar(grid, value), 0, 0));
  return x;
}

BiChaosElement BiChaosElement::from_split(SplitKernel w) {
  BiChaosElement x(w.kernel().grid());
  x.add(w);
  return x;
}

const Kernel* BiChaosElement::term(Split split) const {
  const auto it = terms_.find(split);
  return it == terms_.end() ? nullptr : &it->second;
}

void BiChaosElement::add(const SplitKernel& w) {
  if (!(w.kernel().grid() == grid_)) throw ShapeError("bi-chaos element: grid mismatch");
  auto it = terms_.find(w.split());
  if (it == terms_.end()) {
    terms_.emplace(w.split(), w.kernel());
  } else {
    it->second += w.kernel();
  }
  prune();
}

BiChaosElement& BiChaosElement::operator+=(const BiChaosElement& other) {
  if (!(other.grid_ == grid_)) throw ShapeError("bi-chaos element: grid mismatch");
  for (const auto& [split, w] : other.terms_) {
    auto it = terms_.find(split);
    if (it == terms_.end()) {
      terms_.emplace(split, w);
    } else {
      it->second += w;
    }
  }
  prune();
  return *this;
}

BiChaosElement& BiChaosElement::operator-=(const BiChaosElement& other) {
  BiChaosElement negated = other;
  negated *= -1.0;
  return *this += negated;
}

BiChaosElement& BiChaosElement::operator*=(Scalar factor) {
  for (auto& [split, w] : terms_) w *= factor;
  prune();
  return *this;
}

void BiChaosElement::prune() {
  std::erase_if(terms_, [](const auto& entry) { return entry.second.max_abs() < kPruneThreshold; });
}

BiChaosElement tensor(const ChaosElement& a, const ChaosElement& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("tensor: grid mismatch");
  BiChaosElement out(a.grid());
  for (const auto& [n, f] : a.terms()) {
    for (const auto& [m, g] : b.terms()) out.add(SplitKernel(tensor(f, g), n, m));
  }
  return out;
}

BiChaosElement sharp_multiply(const BiChaosElement& x, const BiChaosElement& y) {
  if (!(x.grid() == y.grid())) throw ShapeError("sharp_multiply: grid mismatch");
  std::map<Split, Kernel> acc;
  for (const auto& [sx, wx] : x.terms()) {
    const SplitKernel f(wx, sx.first, sx.second);
    for (const auto& [sy, wy] : y.terms()) {
      const SplitKernel g(wy, sy.first, sy.second);
      for (int p = 0; p <= std::min(sx.first, sy.first); ++p) {
        for (int r = 0; r <= std::min(sx.second, sy.second); ++r) {
          SplitKernel c = bicontract(f, g, p, r);
          auto it = acc.find(c.split());
          if (it == acc.end()) {
            acc.emplace(c.split(), std::move(c.kernel()));
          } else {
            it->second += c.kernel();
          }
        }
      }
    }
  }
  BiChaosElement out(x.grid());
  for (auto& [split, w] : acc) out.add(SplitKernel(std::move(w), split.first, split.second));
  return out;
}

BiChaosElement adjoint(const BiChaosElement& x) {
  BiChaosElement out(x.grid());
  for (const auto& [split, w] : x.terms()) {
    out.add(adjoint_split(SplitKernel(w, split.first, split.second)));
  }
  return out;
}

Scalar bitrace(const BiChaosElement& x) {
  const Kernel* c = x.term({0, 0});
  return c == nullptr ? Scalar{} : c->value();
}

double norm2(const BiChaosElement& x) {
  double total = 0.0;
  for (const auto& [split, w] : x.terms()) total += norm_squared(w);
  return total;
}

Scalar bi_inner(const BiChaosElement& x, const BiChaosElement& y) {
  if (!(x.grid() == y.grid())) throw ShapeError("bi_inner: grid mismatch");
  Scalar total = 0.0;
  for (const auto& [split, w] : x.terms()) {
    if (const Kernel* v = y.term(split)) total += inner(w, *v);
  }
  return total;
}

double max_abs_diff(const BiChaosElement& x, const BiChaosElement& y) {
  if (!(x.grid() == y.grid())) throw ShapeError("max_abs_diff: grid mismatch");
  double worst = 0.0;
  for (const auto& [split, w] : x.terms()) {
    const Kernel* v = y.term(split);
    worst = std::max(worst, v == nullptr ? w.max_abs() : max_abs_diff(w, *v));
  }
  for (const auto& [split, v] : y.terms()) {
    if (x.term(split) == nullptr) worst = std::max(worst, v.max_abs());
  }
  return worst;
}

}  // namespace wigner
