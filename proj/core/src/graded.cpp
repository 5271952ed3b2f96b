#include "moller/graded.hpp"

#include "moller/errors.hpp"

#include <set>

namespace moller {

GradedVectorSpace::GradedVectorSpace(std::map<int, std::vector<std::string>> components)
{
    for (auto& [k, labels] : components) {
        if (labels.empty())
            continue;
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size())
            throw DimensionMismatch("duplicate basis label in degree " + std::to_string(k));
        comps_.emplace(k, std::move(labels));
    }
}

std::size_t GradedVectorSpace::dim(int degree) const
{
    auto it = comps_.find(degree);
    return it == comps_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& GradedVectorSpace::labels(int degree) const
{
    static const std::vector<std::string> none;
    auto it = comps_.find(degree);
    return it == comps_.end() ? none : it->second;
}

std::vector<int> GradedVectorSpace::degrees() const
{
    std::vector<int> out;
    for (const auto& [k, _] : comps_)
        out.push_back(k);
    return out;
}

std::size_t GradedVectorSpace::total_dim() const
{
    std::size_t n = 0;
    for (const auto& [_, l] : comps_)
        n += l.size();
    return n;
}

std::optional<std::size_t> GradedVectorSpace::index_of(int degree, const std::string& label) const
{
    const auto& l = labels(degree);
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] == label)
            return i;
    return std::nullopt;
}

SpacePtr make_space(std::map<int, std::vector<std::string>> components)
{
    return std::make_shared<const GradedVectorSpace>(std::move(components));
}

SpacePtr make_space(GradedVectorSpace space) { return std::make_shared<const GradedVectorSpace>(std::move(space)); }

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift)
{
}

SparseMatrix GradedMap::block(int k) const
{
    auto it = blocks_.find(k);
    if (it != blocks_.end())
        return it->second;
    return SparseMatrix(target_->dim(k + shift_), source_->dim(k));
}

const SparseMatrix* GradedMap::find_block(int k) const
{
    auto it = blocks_.find(k);
    return it == blocks_.end() ? nullptr : &it->second;
}

void GradedMap::set_block(int k, SparseMatrix m)
{
    if (m.rows() != target_->dim(k + shift_) || m.cols() != source_->dim(k))
        throw ShapeMismatch("block at degree " + std::to_string(k) + " has shape " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(target_->dim(k + shift_)) + "x" +
                            std::to_string(source_->dim(k)));
    if (m.rows() == 0 || m.cols() == 0)
        return;
    blocks_[k] = std::move(m);
}

void GradedMap::add_block(int k, const SparseMatrix& m)
{
    auto it = blocks_.find(k);
    if (it == blocks_.end())
        set_block(k, m);
    else
        it->second = it->second + m;
}

SparseVec GradedMap::apply(int k, const SparseVec& x) const
{
    auto it = blocks_.find(k);
    if (it == blocks_.end())
        return {};
    return it->second.apply(x);
}

bool GradedMap::is_zero() const
{
    for (const auto& [_, m] : blocks_)
        if (!m.is_zero())
            return false;
    return true;
}

void GradedMap::prune()
{
    for (auto it = blocks_.begin(); it != blocks_.end();)
        it = it->second.is_zero() ? blocks_.erase(it) : std::next(it);
}

GradedMap compose(const GradedMap& a, const GradedMap& b)
{
    if (!same_space(a.source(), b.target()))
        throw ShapeMismatch("compose: source of the outer map differs from target of the inner map");
    GradedMap c(b.source(), a.target(), a.shift() + b.shift());
    for (const auto& [k, mb] : b.blocks()) {
        const SparseMatrix* ma = a.find_block(k + b.shift());
        if (!ma)
            continue;
        c.set_block(k, *ma * mb);
    }
    return c;
}

namespace {

GradedMap combine(const GradedMap& a, const GradedMap& b, const Rational& sb)
{
    if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target()) || a.shift() != b.shift())
        throw ShapeMismatch("sum of maps with different shapes");
    GradedMap c = a;
    for (const auto& [k, m] : b.blocks())
        c.add_block(k, m.scaled(sb));
    return c;
}

} // namespace

GradedMap operator+(const GradedMap& a, const GradedMap& b) { return combine(a, b, Rational(1)); }
GradedMap operator-(const GradedMap& a, const GradedMap& b) { return combine(a, b, Rational(-1)); }

GradedMap scaled(const GradedMap& a, const Rational& c)
{
    GradedMap out(a.source(), a.target(), a.shift());
    for (const auto& [k, m] : a.blocks())
        out.set_block(k, m.scaled(c));
    return out;
}

bool operator==(const GradedMap& a, const GradedMap& b)
{
    if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target()) || a.shift() != b.shift())
        return false;
    for (int k : a.source()->degrees())
        if (a.block(k) != b.block(k))
            return false;
    return true;
}

GradedMap identity_map(const SpacePtr& v)
{
    GradedMap id(v, v, 0);
    for (int k : v->degrees())
        id.set_block(k, SparseMatrix::identity(v->dim(k)));
    return id;
}

GradedMap zero_map(const SpacePtr& source, const SpacePtr& target, int shift) { return GradedMap(source, target, shift); }

CochainComplex::CochainComplex(SpacePtr s, GradedMap differential) : space(std::move(s)), d(std::move(differential))
{
    if (!same_space(d.source(), space) || !same_space(d.target(), space) || d.shift() != 1)
        throw ShapeMismatch("differential must be a degree +1 endomorphism of the space");
}

CochainComplex CochainComplex::zero_differential(SpacePtr s)
{
    GradedMap d(s, s, 1);
    return CochainComplex(s, d);
}

GradedMap hom_differential(const GradedMap& l, const CochainComplex& source, const CochainComplex& target)
{
    GradedMap left = compose(target.d, l);
    GradedMap right = compose(l, source.d);
    return (l.shift() % 2 == 0) ? left - right : left + right;
}

} // namespace moller
