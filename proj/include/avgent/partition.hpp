#pragma once

#include "avgent/exactmath.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace avgent {

/// Ordered tensor factors n_1..n_N of a Hilbert space. Factor 0 is the most
/// significant digit of the row-major flat index.
class FactorList {
  public:
    explicit FactorList(std::vector<std::uint64_t> dims);

    /// Parses "2x3x5". Throws InvalidArgument on malformed text or a zero factor.
    static FactorList parse(std::string_view text);

    const std::vector<std::uint64_t>& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return dims_.size(); }
    std::uint64_t operator[](std::size_t i) const { return dims_.at(i); }
    const BigInt& total() const noexcept { return total_; }

    std::string to_string() const;

    friend bool operator==(const FactorList&, const FactorList&) = default;

  private:
    std::vector<std::uint64_t> dims_;
    BigInt total_;
};

/// A subset K of factor indices together with n_K and n / n_K.
class Selector {
  public:
    /// Indices may be given in any order; they are sorted. Duplicates and
    /// out-of-range indices are rejected with the offending index named.
    Selector(const FactorList& factors, std::vector<std::size_t> indices);

    /// Parses "0,2" (empty string means the empty collection).
    static Selector parse(const FactorList& factors, std::string_view text);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(std::size_t i) const;
    const BigInt& kept_dim() const noexcept { return kept_; }
    const BigInt& complement_dim() const noexcept { return complement_; }
    std::size_t factor_count() const noexcept { return factor_count_; }

    Selector complement(const FactorList& factors) const;
    Selector united(const FactorList& factors, const Selector& other) const;

    std::string to_string() const;

    friend bool operator==(const Selector& a, const Selector& b) {
        return a.factor_count_ == b.factor_count_ && a.indices_ == b.indices_;
    }

  private:
    std::vector<std::size_t> indices_;
    BigInt kept_;
    BigInt complement_;
    std::size_t factor_count_ = 0;
};

struct MinMaxSplit {
    BigInt m;
    BigInt M;
};

struct CollectionDims {
    BigInt kept;
    BigInt complement;
};

CollectionDims collection_dims(const FactorList& factors, const Selector& sel);

/// (min, max) of kept_dim and total / kept_dim. Throws InvalidArgument unless kept_dim divides total.
MinMaxSplit min_max_split(const BigInt& kept_dim, const BigInt& total);

bool disjoint(const Selector& a, const Selector& b);

} // namespace avgent
