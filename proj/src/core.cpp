#include "pho/core.hpp"

#include <algorithm>
#include <sstream>

namespace pho {

namespace {

void check_dim(std::vector<std::string>& out, const std::string& what, int got,
               int want) {
  if (got != want) {
    std::ostringstream os;
    os << what << " has length " << got << ", expected " << want;
    out.push_back(os.str());
  }
}

void check_mat(std::vector<std::string>& out, const std::string& what, const Mat& m,
               int rows, int cols) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << rows
       << "x" << cols;
    out.push_back(os.str());
  }
}

}  // namespace

ValidationReport validate_problem(const PHOProblem& prob) {
  ValidationReport rep;
  auto& v = rep.violations;

  if (prob.n < 0) v.push_back("n must be nonnegative");
  if (prob.m != prob.psi.num_blocks()) {
    std::ostringstream os;
    os << "m = " << prob.m << " but psi has " << prob.psi.num_blocks() << " blocks";
    v.push_back(os.str());
  }

  // Block structure: disjoint, in range, covering, dims matching.
  std::vector<int> seen(prob.n, -1);
  for (int i = 0; i < prob.psi.num_blocks(); ++i) {
    const Block& blk = prob.psi.blocks[i];
    if (blk.indices.empty()) {
      std::ostringstream os;
      os << "block " << i << " is empty";
      v.push_back(os.str());
    }
    if (static_cast<int>(blk.indices.size()) != blk.fn.dim) {
      std::ostringstream os;
      os << "block " << i << " has " << blk.indices.size()
         << " indices but its function has dim " << blk.fn.dim;
      v.push_back(os.str());
    }
    if (blk.fn.dim < 1) {
      std::ostringstream os;
      os << "block " << i << " function dim must be >= 1";
      v.push_back(os.str());
    }
    for (int idx : blk.indices) {
      if (idx < 0 || idx >= prob.n) {
        std::ostringstream os;
        os << "block " << i << " index " << idx << " out of range [0, " << prob.n
           << ")";
        v.push_back(os.str());
        continue;
      }
      if (seen[idx] >= 0) {
        std::ostringstream os;
        os << "blocks " << seen[idx] << " and " << i << " overlap at index " << idx;
        v.push_back(os.str());
      } else {
        seen[idx] = i;
      }
    }
  }
  for (int j = 0; j < prob.n; ++j) {
    if (seen[j] < 0) {
      std::ostringstream os;
      os << "variable " << j << " is covered by no block (blocks must partition all "
            "variables)";
      v.push_back(os.str());
    }
  }

  check_dim(rep.violations, "c", static_cast<int>(prob.c.size()), prob.n);
  check_dim(rep.violations, "d", static_cast<int>(prob.d.size()), prob.m);
  check_dim(rep.violations, "b", static_cast<int>(prob.b.size()), prob.k);
  check_dim(rep.violations, "p", static_cast<int>(prob.p.size()), prob.l);
  check_mat(rep.violations, "A", prob.A, prob.k, prob.n);
  check_mat(rep.violations, "B", prob.B, prob.k, prob.m);
  check_mat(rep.violations, "H", prob.H, prob.l, prob.n);
  check_mat(rep.violations, "K", prob.K, prob.l, prob.m);

  return rep;
}

}  // namespace pho
