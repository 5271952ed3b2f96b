#pragma once

#include "moller/matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace moller {

class GradedVectorSpace {
public:
    GradedVectorSpace() = default;
    // Empty components are dropped; duplicate labels within a degree throw.
    explicit GradedVectorSpace(std::map<int, std::vector<std::string>> components);

    const std::map<int, std::vector<std::string>>& components() const { return comps_; }
    std::size_t dim(int degree) const;
    const std::vector<std::string>& labels(int degree) const;
    std::vector<int> degrees() const;
    std::size_t total_dim() const;
    bool empty() const { return comps_.empty(); }
    std::optional<std::size_t> index_of(int degree, const std::string& label) const;

    bool operator==(const GradedVectorSpace& o) const { return comps_ == o.comps_; }
    bool operator!=(const GradedVectorSpace& o) const { return comps_ != o.comps_; }

private:
    std::map<int, std::vector<std::string>> comps_;
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

SpacePtr make_space(std::map<int, std::vector<std::string>> components);
SpacePtr make_space(GradedVectorSpace space);
bool same_space(const SpacePtr& a, const SpacePtr& b);

// Degree-`shift` linear map; block k sends source degree k to target degree k + shift.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(SpacePtr source, SpacePtr target, int shift);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int shift() const { return shift_; }
    const std::map<int, SparseMatrix>& blocks() const { return blocks_; }

    // Zero matrix of the right shape when the block is absent.
    SparseMatrix block(int k) const;
    const SparseMatrix* find_block(int k) const;
    void set_block(int k, SparseMatrix m);
    void add_block(int k, const SparseMatrix& m);

    SparseVec apply(int k, const SparseVec& x) const;
    bool is_zero() const;
    void prune(); // drops zero blocks

private:
    SpacePtr source_, target_;
    int shift_ = 0;
    std::map<int, SparseMatrix> blocks_;
};

GradedMap compose(const GradedMap& a, const GradedMap& b); // a after b
GradedMap operator+(const GradedMap& a, const GradedMap& b);
GradedMap operator-(const GradedMap& a, const GradedMap& b);
GradedMap scaled(const GradedMap& a, const Rational& c);
bool operator==(const GradedMap& a, const GradedMap& b);
inline bool operator!=(const GradedMap& a, const GradedMap& b) { return !(a == b); }

GradedMap identity_map(const SpacePtr& v);
GradedMap zero_map(const SpacePtr& source, const SpacePtr& target, int shift);

struct CochainComplex {
    SpacePtr space;
    GradedMap d;

    CochainComplex() = default;
    CochainComplex(SpacePtr s, GradedMap differential);
    static CochainComplex zero_differential(SpacePtr s);
};

// Internal hom differential: d_t L - (-1)^{|L|} L d_s.
GradedMap hom_differential(const GradedMap& l, const CochainComplex& source, const CochainComplex& target);

} // namespace moller
