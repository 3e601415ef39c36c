#include "onewave/farfield.hpp"

#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"

namespace onewave {

double grid_angle(int j, int M) { return 2.0 * std::numbers::pi * j / M; }

void FarFieldData::validate() const {
  if (M <= 0) throw DomainError("far-field grid size must be positive");
  if (p.size() != M || s.size() != M) {
    std::ostringstream os;
    os << "far-field channels have sizes " << p.size() << ", " << s.size() << " but M = " << M;
    throw DomainError(os.str());
  }
  if (!p.allFinite() || !s.allFinite()) throw DomainError("far-field data contain non-finite values");
}

void FarFieldMatrixData::validate() const {
  if (M <= 0) throw DomainError("far-field grid size must be positive");
  for (const CMat* c : {&pp, &ps, &sp, &ss}) {
    if (c->rows() != M || c->cols() != M) {
      std::ostringstream os;
      os << "far-field matrix channel is " << c->rows() << "x" << c->cols() << " but M = " << M;
      throw DomainError(os.str());
    }
    if (!c->allFinite()) throw DomainError("far-field matrix data contain non-finite values");
  }
}

const CMat& FarFieldMatrixData::channel(int alpha, int beta) const {
  if (alpha == 0) return beta == 0 ? pp : ps;
  return beta == 0 ? sp : ss;
}

CMat& FarFieldMatrixData::channel(int alpha, int beta) {
  if (alpha == 0) return beta == 0 ? pp : ps;
  return beta == 0 ? sp : ss;
}

}  // namespace onewave
