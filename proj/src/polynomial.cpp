#include "pbounds/polynomial.hpp"

namespace pbounds {

template class Polynomial<1>;
template class Polynomial<2>;
template class Polynomial<3>;

} // namespace pbounds
