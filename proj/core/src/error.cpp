#include "linkcap/error.hpp"

#include <string>

namespace linkcap {

TruncationInsufficient::TruncationInsufficient(std::size_t edge, double retained,
                                               double criterion)
    : Error("edge " + std::to_string(edge) + " retains mass " + std::to_string(retained) +
            " < criterion " + std::to_string(criterion) + "; raise the truncation length"),
      edge_(edge),
      retained_(retained),
      criterion_(criterion) {}

}  // namespace linkcap
