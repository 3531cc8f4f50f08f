#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fw {

// Two-stage pruning schedule: cubic ramp to the warmup target, hold, then
// n_loops of {cubic ramp +increment, hold}. Within a ramp window of length T,
//   s(t) = s0 + (s1 - s0) * (1 - (1 - t/T)^3).
// Iteration counts are divided by `scale` (>= 1) for desk-scale runs.
struct TsspSchedule {
    double warmup_target = 0.5;
    long long warmup_ramp_iters = 300000;
    long long warmup_maintain_iters = 100000;
    double loop_increment = 0.1;
    long long loop_ramp_iters = 100000;
    long long loop_maintain_iters = 100000;
    int n_loops = 4;

    TsspSchedule() = default;
    TsspSchedule scaled(long long scale) const;

    double final_target() const { return warmup_target + n_loops * loop_increment; }
    long long total_iters() const {
        return warmup_ramp_iters + warmup_maintain_iters +
               n_loops * (loop_ramp_iters + loop_maintain_iters);
    }

    double target_sparsity(long long iter) const;
};

// 16x1 blocks: 16 consecutive rows, one column. One mask per recurrent
// matrix; mask(i, j) covers rows [16i, 16i+16) of column j.
struct BlockMask {
    static constexpr int kBlockRows = 16;
    int block_rows_count = 0;  // rows / 16
    int cols = 0;
    std::vector<uint8_t> mask;  // block_rows_count * cols, 1 = kept

    static BlockMask ones(int rows, int cols);
    bool kept(int block_row, int col) const { return mask[block_row * cols + col] != 0; }
    double sparsity() const;
    std::size_t zero_blocks() const;

    void apply(Eigen::MatrixXd& w) const;  // zero out pruned blocks
};

// Magnitude pruning: rank blocks by mean |value|, zero the smallest fraction.
// Monotone relative to `previous`: a block pruned there stays pruned, so a
// non-decreasing target never regrows weights.
BlockMask prune_to(const Eigen::MatrixXd& w, double sparsity, const BlockMask* previous = nullptr);

// Block-row-compressed storage of a 16x1-block-sparse matrix.
template <typename Scalar>
struct BlockSparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;       // per block row: start into cols_/values_
    std::vector<int> col_index;     // column of each block
    std::vector<Scalar> values;     // 16 contiguous values per block

    static BlockSparseMatrix from_dense(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& dense);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const;

    // y = M x. Block rows are independent, so `threads` > 1 partitions them
    // with per-row outputs and stays bit-identical to the sequential result.
    void matvec(const Scalar* x, Scalar* y, int threads = 1) const;
};

extern template struct BlockSparseMatrix<float>;
extern template struct BlockSparseMatrix<double>;

struct BenchReport {
    int n = 0;
    double density = 0.0;
    int reps = 0;
    double dense_ns_per_op = 0.0;
    double sparse_ns_per_op = 0.0;
    double speedup = 0.0;
    double checksum = 0.0;  // defeats dead-code elimination; also a determinism probe
};

BenchReport bench_kernel(int n, double density, int reps, uint64_t seed = 1234);
std::string format_report(const BenchReport& r);

}  // namespace fw
