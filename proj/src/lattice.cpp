#include "latbp/lattice.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace latbp {

Vector lattice_op(LatticeOp kind, const Vector& x, const std::optional<Vector>& y) {
  switch (kind) {
    case LatticeOp::Abs:
      return abs_of(x);
    case LatticeOp::Pos:
      return pos_part(x);
    case LatticeOp::Neg:
      return neg_part(x);
    case LatticeOp::Meet:
    case LatticeOp::Join:
      if (!y) throw std::invalid_argument("lattice_op: meet/join need a second operand");
      return kind == LatticeOp::Meet ? Vector(meet(x, *y)) : Vector(join(x, *y));
  }
  throw std::invalid_argument("lattice_op: unknown kind");
}

LatticeOp parse_lattice_op(const std::string& name) {
  if (name == "abs") return LatticeOp::Abs;
  if (name == "meet") return LatticeOp::Meet;
  if (name == "join") return LatticeOp::Join;
  if (name == "pos") return LatticeOp::Pos;
  if (name == "neg") return LatticeOp::Neg;
  throw std::invalid_argument("unknown lattice op: " + name);
}

// ---------------------------------------------------------------------------

BandProjection::BandProjection(Index dim, IndexSet subset) : dim_(dim), subset_(std::move(subset)) {
  std::sort(subset_.begin(), subset_.end());
  if (!is_valid_index_set(subset_, dim_))
    throw std::invalid_argument("BandProjection: indices out of range or duplicated");
  mask_ = Vector::Zero(dim_);
  for (Index i : subset_) mask_[i] = 1.0;
}

Vector BandProjection::apply(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("BandProjection::apply: dimension mismatch");
  return mask_.cwiseProduct(x);
}

Matrix BandProjection::apply_left(const Matrix& m) const {
  if (m.rows() != dim_) throw std::invalid_argument("BandProjection: dimension mismatch");
  return mask_.asDiagonal() * m;
}

Matrix BandProjection::apply_right(const Matrix& m) const {
  if (m.cols() != dim_) throw std::invalid_argument("BandProjection: dimension mismatch");
  return m * mask_.asDiagonal();
}

BandProjection BandProjection::complement() const {
  return BandProjection(dim_, complement_of(subset_, dim_));
}

Matrix BandProjection::matrix() const {
  return Matrix(mask_.asDiagonal());
}

// ---------------------------------------------------------------------------

Partition::Partition(Index dim, std::vector<IndexSet> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("Partition: empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
  block_of_.assign(static_cast<std::size_t>(dim_), blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (Index i : blocks_[k]) {
      if (i < 0 || i >= dim_) throw std::invalid_argument("Partition: index out of range");
      if (block_of_[static_cast<std::size_t>(i)] != blocks_.size())
        throw std::invalid_argument("Partition: blocks overlap");
      block_of_[static_cast<std::size_t>(i)] = k;
    }
  }
  for (std::size_t i = 0; i < block_of_.size(); ++i)
    if (block_of_[i] == blocks_.size())
      throw std::invalid_argument("Partition: blocks do not cover every coordinate");
}

Partition Partition::finest(Index dim) {
  std::vector<IndexSet> blocks;
  blocks.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) blocks.push_back({i});
  return Partition(dim, std::move(blocks));
}

Partition Partition::one_block(Index dim) {
  IndexSet all(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return Partition(dim, {all});
}

BandProjection Partition::projection(std::size_t block) const {
  return BandProjection(dim_, blocks_.at(block));
}

bool Partition::operator==(const Partition& other) const {
  return dim_ == other.dim_ && blocks_ == other.blocks_;
}

Partition refine(const Partition& p, const Partition& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("refine: dimension mismatch");
  std::map<std::pair<std::size_t, std::size_t>, IndexSet> cells;
  for (Index i = 0; i < p.dim(); ++i) {
    auto key = std::make_pair(p.block_of()[static_cast<std::size_t>(i)],
                              q.block_of()[static_cast<std::size_t>(i)]);
    cells[key].push_back(i);
  }
  std::vector<IndexSet> blocks;
  blocks.reserve(cells.size());
  for (auto& [key, cell] : cells) blocks.push_back(std::move(cell));
  return Partition(p.dim(), std::move(blocks));
}

bool precedes(const Partition& coarse, const Partition& fine) {
  if (coarse.dim() != fine.dim()) return false;
  // Every fine block must sit inside a single coarse block.
  for (const auto& b : fine.blocks()) {
    std::size_t host = coarse.block_of()[static_cast<std::size_t>(b.front())];
    for (Index i : b)
      if (coarse.block_of()[static_cast<std::size_t>(i)] != host) return false;
  }
  return true;
}

}  // namespace latbp
