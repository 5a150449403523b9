#include "rootmirror/laurent.hpp"

#include <sstream>

namespace rootmirror {

namespace {

template <class V>
std::string render(const BasicLaurent<V>& b) {
  std::ostringstream os;
  bool first = true;
  for (auto it = b.coeffs().rbegin(); it != b.coeffs().rend(); ++it) {
    if (!first) os << " + ";
    os << "(" << it->second.str() << ")";
    if (it->first != 0) os << "*z^" << it->first;
    first = false;
  }
  if (first) os << "0";
  if (b.floor()) os << " + O(z^" << (*b.floor() - 1) << ")";
  return os.str();
}

}  // namespace

std::string block_str(const LaurentBlock& b) { return render(b); }
std::string block_str(const RingLaurent& b) { return render(b); }

}  // namespace rootmirror
