#pragma once

#include "moller/errors.hpp"
#include "moller/graded.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace moller {

// Generators of V in canonical order: by degree, then by basis position.
class GeneratorTable {
public:
    explicit GeneratorTable(const SpacePtr& v);

    std::size_t size() const { return degree_.size(); }
    int degree(std::uint32_t g) const { return degree_[g]; }
    bool odd(std::uint32_t g) const { return (degree_[g] & 1) != 0; }
    std::uint32_t position(std::uint32_t g) const { return position_[g]; }
    const std::string& label(std::uint32_t g) const { return label_[g]; }
    std::uint32_t index(int degree, std::size_t position) const;

private:
    std::vector<int> degree_;
    std::vector<std::uint32_t> position_;
    std::vector<std::string> label_;
    std::map<int, std::uint32_t> first_;
};

// Sorted list of generator indices; an odd generator appears at most once.
using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

using Polynomial = std::map<Monomial, Rational>;

void add_term(Polynomial& p, const Monomial& m, const Rational& c);
void add_scaled(Polynomial& p, const Polynomial& q, const Rational& c);

// Sign e with v_1 ... v_n = e v_{perm[0]} ... v_{perm[n-1]} in a graded-commutative algebra.
int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees);

// Sorts a word of generators into canonical order. Returns the Koszul sign,
// or 0 when an odd generator repeats.
int canonicalize(std::vector<std::uint32_t>& word, const GeneratorTable& gens);

// Product of canonical monomials, returned with its sign (0 if it vanishes).
std::pair<Monomial, int> multiply(const Monomial& a, const Monomial& b, const GeneratorTable& gens);
Polynomial multiply(const Polynomial& a, const Polynomial& b, const GeneratorTable& gens);

int monomial_degree(const Monomial& m, const GeneratorTable& gens);
std::string monomial_label(const Monomial& m, const GeneratorTable& gens);

struct SymBasisElement {
    Monomial monomial;
    int degree = 0;
    std::string label;
};

// Basis of Sym^weight V ordered by degree, then lexicographically.
std::vector<SymBasisElement> sym_basis(const SpacePtr& v, int weight);

// Sym^w V as a graded vector space with a monomial lookup.
class SymPower {
public:
    SymPower(SpacePtr generators, int weight);

    const SpacePtr& generators() const { return gens_space_; }
    const GeneratorTable& table() const { return *table_; }
    int weight() const { return weight_; }
    const SpacePtr& space() const { return space_; }
    const std::vector<Monomial>& monomials(int degree) const;
    std::optional<std::pair<int, std::uint32_t>> find(const Monomial& m) const;

private:
    SpacePtr gens_space_;
    std::shared_ptr<const GeneratorTable> table_;
    int weight_;
    SpacePtr space_;
    std::map<int, std::vector<Monomial>> monos_;
    std::unordered_map<Monomial, std::pair<int, std::uint32_t>, MonomialHash> lookup_;
};

// Sym^{<=W} V. Within each degree, basis elements are grouped by weight.
class SymTruncation {
public:
    SymTruncation(SpacePtr generators, int max_weight);

    const SpacePtr& generators() const { return gens_space_; }
    const GeneratorTable& table() const { return *table_; }
    int max_weight() const { return max_weight_; }
    const SpacePtr& space() const { return space_; }

    const Monomial& monomial(int degree, std::size_t index) const;
    int weight(int degree, std::size_t index) const;
    // [begin, end) of the weight-w elements inside the degree component.
    std::pair<std::size_t, std::size_t> weight_range(int degree, int w) const;
    std::optional<std::pair<int, std::uint32_t>> find(const Monomial& m) const;
    std::size_t dim(int degree, int w) const;

    // Coordinates of a polynomial; throws InvalidMonomial on terms outside the truncation
    // or not of the given degree.
    SparseVec coordinates(const Polynomial& p, int degree) const;
    Polynomial polynomial(int degree, const SparseVec& v) const;

private:
    SpacePtr gens_space_;
    std::shared_ptr<const GeneratorTable> table_;
    int max_weight_;
    SpacePtr space_;
    std::map<int, std::vector<Monomial>> monos_;
    std::map<int, std::vector<std::size_t>> offsets_; // offsets_[k][w] .. offsets_[k][w+1]
    std::unordered_map<Monomial, std::pair<int, std::uint32_t>, MonomialHash> lookup_;
};

// A graded map on truncations in which some source columns are unknown
// because their image leaves the truncation.
struct PartialMap {
    GradedMap map;
    std::map<int, std::vector<char>> unknown; // per source degree, one flag per column

    PartialMap() = default;
    explicit PartialMap(GradedMap m) : map(std::move(m)) {}

    bool is_unknown(int degree, std::size_t column) const;
    void mark_unknown(int degree, std::size_t column);
    bool has_unknown() const;
    std::size_t unknown_count() const;
};

// a after b; a column is unknown when it is unknown in b or when it meets an unknown column of a.
PartialMap compose(const PartialMap& a, const PartialMap& b);
PartialMap operator+(const PartialMap& a, const PartialMap& b);
PartialMap scaled(const PartialMap& a, const Rational& c);
// True when the two maps agree on every column known in both.
bool agree_on_known(const PartialMap& a, const PartialMap& b);
// Zero on every known column.
bool zero_on_known(const PartialMap& a);

// Power series in lambda with PartialMap coefficients; absent orders are zero.
struct FormalGradedMap {
    SpacePtr source, target;
    int shift = 0;
    int max_order = 0;
    std::map<int, PartialMap> orders;

    PartialMap order(int n) const; // zero map when absent
};

// l_n: Sym^n V -> V (shift +1) to V* -> Sym^n V* (shift +1):
// l_n*(x_b) = sum_m (-1)^{s(s+1)/2} l_n[b, m] x^m, s the number of odd factors of m.
GradedMap dualize_bracket(const GradedMap& ln, const SymPower& source_power, const SymPower& dual_power);
// Inverse of dualize_bracket.
GradedMap undualize_bracket(const GradedMap& dual, const SymPower& source_power, const SymPower& dual_power);

// Images of the generators as polynomials, indexed by generator.
using GeneratorImages = std::vector<Polynomial>;

GeneratorImages images_from_map(const GradedMap& gen_map, const SymPower& target);
GeneratorImages images_from_map(const GradedMap& gen_map, const SymTruncation& target);

// Leibniz extension of a derivation of the given degree to the truncation.
// Columns whose image leaves the truncation are flagged unknown.
PartialMap extend_derivation(const GeneratorImages& images, int shift, const SymTruncation& trunc);
PartialMap extend_derivation(const GradedMap& gen_map, const SymPower& target, const SymTruncation& trunc);

// Multiplicative extension of K = sum_n lambda^n K_n given on generators
// (images_by_order[n] holds K_n); orders above max_order are dropped.
FormalGradedMap extend_algebra_map(const std::vector<GeneratorImages>& images_by_order, const SymTruncation& trunc,
                                   int max_order);

// Sym(f) for a degree-0 linear map f between generator spaces.
GradedMap sym_map(const GradedMap& f, const SymTruncation& source, const SymTruncation& target);

// Graded-symmetric multilinear value l_n(e_{g_1}, ..., e_{g_n}) for canonical
// basis inputs in any order: the stored coefficient times the multiplicity
// factorials, with the Koszul sign of reordering.
SparseVec evaluate_bracket(const GradedMap& ln, const SymPower& power, const std::vector<std::uint32_t>& inputs,
                           int& target_degree);

} // namespace moller
