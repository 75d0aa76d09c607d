// Exception types thrown across the library. Each carries the context a
// caller needs to report the failure (offending indices, sizes, paths).
#pragma once

#include <stdexcept>
#include <string>

namespace albatch {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- posterior tensor ingestion ---

struct HeaderMismatchError : Error {
  using Error::Error;
};

struct RowSumViolationError : Error {
  RowSumViolationError(int pool, int member, double sum, std::string msg)
      : Error(std::move(msg)), pool_index(pool), member_index(member), row_sum(sum) {}
  int pool_index;
  int member_index;
  double row_sum;
};

struct NegativeProbabilityError : Error {
  NegativeProbabilityError(int pool, int member, int cls, std::string msg)
      : Error(std::move(msg)), pool_index(pool), member_index(member), class_index(cls) {}
  int pool_index;
  int member_index;
  int class_index;
};

// --- pairwise / joint computations ---

struct IndexOutOfRangeError : Error {
  using Error::Error;
};

struct SelfPairError : Error {
  using Error::Error;
};

struct DuplicateIndexError : Error {
  using Error::Error;
};

struct EnumerationCapExceededError : Error {
  using Error::Error;
};

// --- datasets ---

struct InvalidSpecError : Error {
  using Error::Error;
};

struct BadMagicError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct LabelOutOfRangeError : Error {
  using Error::Error;
};

// --- reporting ---

struct NonPositiveErrorValue : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace albatch
