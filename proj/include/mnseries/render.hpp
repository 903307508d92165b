#ifndef MNSERIES_RENDER_HPP
#define MNSERIES_RENDER_HPP

#include <string>
#include <utility>

#include <mnseries/scalar.hpp>

namespace mns
{

// (negative, |c|) when c is a negative rational constant of its field, or a
// value whose leading coefficient is negative; (false, c) otherwise.
std::pair<bool, Scalar> split_sign(const Scalar &c);

// c*basis with the coefficient omitted when it is 1 and basis nonempty.
std::string render_product(const Scalar &c, const std::string &basis);

} // namespace mns

#endif
