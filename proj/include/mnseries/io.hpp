#ifndef MNSERIES_IO_HPP
#define MNSERIES_IO_HPP

#include <string>
#include <string_view>

#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

namespace mns
{

// Line-oriented text format:
//
//   mnseries 1                 skewlaurent 1
//   spec trivial               ring sigma=id delta=ddt
//   group zn:2                 field qt
//   field q                    cutoff 7
//   cutoff g[0,3]              -1 t
//   g[1,0] 2/3                 2 1/(t + 1)
//   end                        end
//
// Blank lines and lines starting with '#' are skipped. ParseError on bad input.
std::string write_series(const MNSeries &f);
MNSeries read_series(std::string_view text);

std::string write_laurent(const SkewLaurent &f);
SkewLaurent read_laurent(std::string_view text);

} // namespace mns

#endif
