#include "genchar/subset.hpp"

#include "genchar/errors.hpp"

namespace genchar {

SubsetIndex::SubsetIndex(std::uint64_t mask, unsigned n) : mask_(mask), n_(n) {
  if (n > max_size) throw ShapeError("subset ambient size " + std::to_string(n) + " exceeds " + std::to_string(max_size));
  if ((mask & ~full_mask(n)) != 0)
    throw ShapeError("subset mask " + std::to_string(mask) + " out of range for n = " + std::to_string(n));
}

SubsetIndex SubsetIndex::of(std::initializer_list<unsigned> members, unsigned n) {
  std::uint64_t mask = 0;
  for (unsigned k : members) {
    if (k < 1 || k > n) throw ShapeError("subset member " + std::to_string(k) + " outside 1.." + std::to_string(n));
    mask |= std::uint64_t{1} << (k - 1);
  }
  return {mask, n};
}

std::vector<std::size_t> SubsetIndex::positions() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::string SubsetIndex::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t p : positions()) {
    if (!first) s += ',';
    s += std::to_string(p + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace genchar
