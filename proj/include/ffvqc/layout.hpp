#pragma once

#include <string>

#include "errors.hpp"

namespace ffvqc {

// Maps problem variables onto qubits. Problem variables occupy the low qubits
// (x first, then y) so projecting a basis index onto the problem register is
// a single mask; auxiliary qubits follow.
//
//   x(i, j) -> j * rows + i        i < rows, j < cols
//   y(i)    -> rows * cols + i     i < num_y
//   aux(k)  -> rows * cols + num_y + k
class QubitLayout {
 public:
  QubitLayout(int rows, int cols, int num_y, int num_aux)
      : rows_(rows), cols_(cols), num_y_(num_y), num_aux_(num_aux) {
    if (rows < 0 || cols < 0 || num_y < 0 || num_aux < 0) throw ArgumentError("negative layout dimension");
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int num_x() const noexcept { return rows_ * cols_; }
  int num_y() const noexcept { return num_y_; }
  int num_aux() const noexcept { return num_aux_; }
  int problem_bits() const noexcept { return num_x() + num_y_; }
  int total_qubits() const noexcept { return problem_bits() + num_aux_; }

  int x_index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw IndexError("x(" + std::to_string(i) + "," + std::to_string(j) + ") outside layout");
    return j * rows_ + i;
  }
  int y_index(int i) const {
    if (i < 0 || i >= num_y_) throw IndexError("y(" + std::to_string(i) + ") outside layout");
    return num_x() + i;
  }
  int aux_index(int k) const {
    if (k < 0 || k >= num_aux_) throw IndexError("aux(" + std::to_string(k) + ") outside layout");
    return problem_bits() + k;
  }

  friend bool operator==(const QubitLayout&, const QubitLayout&) = default;

 private:
  int rows_;
  int cols_;
  int num_y_;
  int num_aux_;
};

}  // namespace ffvqc
