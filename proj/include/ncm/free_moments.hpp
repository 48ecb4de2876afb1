#pragma once

// Joint moments of freely independent families, computed by the
// alternating/general moment recursion. The state is written w(...).

#include "ncm/expr.hpp"

#include <cstddef>
#include <vector>

namespace ncm {

using IndexTuple = std::vector<unsigned>;

struct ConsecutivityDecomposition {
    struct Block {
        std::size_t begin, end;  // half-open, 0-based
    };
    std::vector<Block> blocks;
    bool nonstammering = true;
};

ConsecutivityDecomposition consecutivity(const IndexTuple& iota);

// Entries are taken from pairwise distinct algebras.
Expr am(const std::vector<Expr>& a);
// iota must be nonstammering. Sub-tuples keep their algebra indices, so
// entries from the same algebra that become adjacent are multiplied.
Expr am(const IndexTuple& iota, const std::vector<Expr>& a);
Expr gm(const IndexTuple& iota, const std::vector<Expr>& a);
inline Expr joint_moment(const IndexTuple& iota, const std::vector<Expr>& a) { return gm(iota, a); }

}  // namespace ncm
