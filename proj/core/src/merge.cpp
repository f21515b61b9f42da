#include <boost/multiprecision/cpp_int.hpp>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"

namespace sgn {

namespace mp = boost::multiprecision;

BigCount MergedSequence::size() const {
  BigCount n = 0;
  for (const auto& s : block_sizes) n += s;
  return n;
}

std::pair<int, int> MergedSequence::index_at(const BigCount& i) const {
  if (i < 0) throw DomainError("negative sequence index");
  BigCount rest = i;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (rest >= block_sizes[b]) {
      rest -= block_sizes[b];
      continue;
    }
    std::int64_t pattern = 0;
    for (auto c : blocks[b].counts) pattern += c;
    std::int64_t r = static_cast<std::int64_t>(rest % pattern);
    for (std::size_t j = 0; j < blocks[b].counts.size(); ++j) {
      if (r < blocks[b].counts[j]) return {static_cast<int>(b), static_cast<int>(j)};
      r -= blocks[b].counts[j];
    }
  }
  throw DomainError("sequence index out of range");
}

std::vector<std::pair<int, int>> MergedSequence::expand(std::size_t limit) const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t b = 0; b < blocks.size() && out.size() < limit; ++b)
    for (BigCount r = 0; r < repeats[b] && out.size() < limit; ++r)
      for (std::size_t j = 0; j < blocks[b].counts.size() && out.size() < limit; ++j)
        for (std::int64_t k = 0; k < blocks[b].counts[j] && out.size() < limit; ++k)
          out.emplace_back(static_cast<int>(b), static_cast<int>(j));
  return out;
}

MergedSequence merge_sequences(const std::vector<MergeBlock>& blocks) {
  MergedSequence seq;
  seq.blocks = blocks;
  mp::cpp_rational emitted = 0;
  for (const auto& blk : blocks) {
    if (blk.lengths.empty() || blk.lengths.size() != blk.counts.size()) throw StructuralError("empty block");
    if (blk.m < 1) throw StructuralError("block index must be positive");
    mp::cpp_rational total = 0;
    std::int64_t pattern = 0;
    for (std::size_t j = 0; j < blk.lengths.size(); ++j) {
      if (blk.counts[j] < 0 || !(blk.lengths[j] > 0.0)) throw StructuralError("malformed block entry");
      total += mp::cpp_rational(blk.counts[j]) * mp::cpp_rational(blk.lengths[j]);
      pattern += blk.counts[j];
    }
    if (pattern == 0) throw StructuralError("empty block");
    // smallest R >= 1 with R * total >= m * emitted
    const mp::cpp_rational need = mp::cpp_rational(blk.m) * emitted / total;
    BigCount r = numerator(need) / denominator(need);
    if (r * denominator(need) < numerator(need)) ++r;
    if (r < 1) r = 1;
    seq.repeats.push_back(r);
    seq.block_sizes.push_back(r * pattern);
    emitted += mp::cpp_rational(r) * total;
  }
  return seq;
}

std::vector<double> merged_block_ratios(const MergedSequence& seq, const std::vector<std::vector<double>>& integrals) {
  if (integrals.size() != seq.blocks.size()) throw StructuralError("one integral list per block");
  std::vector<double> out;
  mp::cpp_rational num = 0;
  mp::cpp_rational den = 0;
  for (std::size_t b = 0; b < seq.blocks.size(); ++b) {
    const auto& blk = seq.blocks[b];
    if (integrals[b].size() != blk.counts.size()) throw StructuralError("one integral per block item");
    mp::cpp_rational bn = 0;
    mp::cpp_rational bd = 0;
    for (std::size_t j = 0; j < blk.counts.size(); ++j) {
      bn += mp::cpp_rational(blk.counts[j]) * mp::cpp_rational(integrals[b][j]);
      bd += mp::cpp_rational(blk.counts[j]) * mp::cpp_rational(blk.lengths[j]);
    }
    num += mp::cpp_rational(seq.repeats[b]) * bn;
    den += mp::cpp_rational(seq.repeats[b]) * bd;
    out.push_back(static_cast<double>(num / den));
  }
  return out;
}

}  // namespace sgn
