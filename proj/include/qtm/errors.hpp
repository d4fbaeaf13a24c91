#pragma once

#include <stdexcept>
#include <string>

namespace qtm {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: parameters, grids, vectors, config files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a result.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The generator kernel is not one-dimensional; both singular values are reported.
class DegenerateKernel : public Error {
 public:
  DegenerateKernel(double smallest, double next_smallest, double largest);

  double smallest() const noexcept { return smallest_; }
  double next_smallest() const noexcept { return next_smallest_; }
  double largest() const noexcept { return largest_; }

 private:
  double smallest_;
  double next_smallest_;
  double largest_;
};

}  // namespace qtm
