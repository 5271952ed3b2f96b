#include "moller/sym.hpp"

#include <algorithm>
#include <functional>

namespace moller {

GeneratorTable::GeneratorTable(const SpacePtr& v)
{
    for (const auto& [k, labels] : v->components()) {
        first_[k] = static_cast<std::uint32_t>(degree_.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            degree_.push_back(k);
            position_.push_back(static_cast<std::uint32_t>(j));
            label_.push_back(labels[j]);
        }
    }
}

std::uint32_t GeneratorTable::index(int degree, std::size_t position) const
{
    auto it = first_.find(degree);
    if (it == first_.end())
        throw DimensionMismatch("no generators in degree " + std::to_string(degree));
    return it->second + static_cast<std::uint32_t>(position);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::size_t h = m.size();
    for (auto g : m)
        h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

void add_term(Polynomial& p, const Monomial& m, const Rational& c)
{
    if (is_zero(c))
        return;
    auto [it, inserted] = p.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            p.erase(it);
    }
}

void add_scaled(Polynomial& p, const Polynomial& q, const Rational& c)
{
    for (const auto& [m, v] : q)
        add_term(p, m, c * v);
}

int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees)
{
    if (perm.size() != degrees.size())
        throw DimensionMismatch("koszul_sign: permutation and degree list differ in length");
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (degrees[perm[i]] & 1) && (degrees[perm[j]] & 1))
                sign = -sign;
    return sign;
}

int canonicalize(std::vector<std::uint32_t>& word, const GeneratorTable& gens)
{
    int sign = 1;
    for (std::size_t i = 1; i < word.size(); ++i)
        for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
            if (gens.odd(word[j - 1]) && gens.odd(word[j]))
                sign = -sign;
            std::swap(word[j - 1], word[j]);
        }
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1] && gens.odd(word[i]))
            return 0;
    return sign;
}

std::pair<Monomial, int> multiply(const Monomial& a, const Monomial& b, const GeneratorTable& gens)
{
    Monomial w;
    w.reserve(a.size() + b.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    int s = canonicalize(w, gens);
    return {std::move(w), s};
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const GeneratorTable& gens)
{
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto [m, s] = multiply(ma, mb, gens);
            if (s != 0)
                add_term(out, m, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
        }
    return out;
}

int monomial_degree(const Monomial& m, const GeneratorTable& gens)
{
    int d = 0;
    for (auto g : m)
        d += gens.degree(g);
    return d;
}

std::string monomial_label(const Monomial& m, const GeneratorTable& gens)
{
    if (m.empty())
        return "1";
    std::string out;
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i])
            ++j;
        if (!out.empty())
            out += "\xC2\xB7"; // middle dot
        out += gens.label(m[i]);
        if (j - i > 1)
            out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace {

// Lexicographic enumeration of weight-w monomials.
void enumerate(const GeneratorTable& gens, int weight, Monomial& cur, std::vector<Monomial>& out)
{
    if (static_cast<int>(cur.size()) == weight) {
        out.push_back(cur);
        return;
    }
    std::uint32_t start = 0;
    if (!cur.empty())
        start = gens.odd(cur.back()) ? cur.back() + 1 : cur.back();
    for (std::uint32_t g = start; g < gens.size(); ++g) {
        cur.push_back(g);
        enumerate(gens, weight, cur, out);
        cur.pop_back();
    }
}

std::vector<Monomial> all_monomials(const GeneratorTable& gens, int weight)
{
    std::vector<Monomial> out;
    Monomial cur;
    if (weight >= 0)
        enumerate(gens, weight, cur, out);
    return out;
}

void fill_column(std::vector<SparseVec>& cols, std::size_t c, SparseVec v) { cols[c] = std::move(v); }

} // namespace

std::vector<SymBasisElement> sym_basis(const SpacePtr& v, int weight)
{
    GeneratorTable gens(v);
    std::map<int, std::vector<SymBasisElement>> by_degree;
    for (auto& m : all_monomials(gens, weight)) {
        int d = monomial_degree(m, gens);
        std::string label = monomial_label(m, gens);
        by_degree[d].push_back({std::move(m), d, std::move(label)});
    }
    std::vector<SymBasisElement> out;
    for (auto& [_, list] : by_degree)
        for (auto& e : list)
            out.push_back(std::move(e));
    return out;
}

SymPower::SymPower(SpacePtr generators, int weight)
    : gens_space_(std::move(generators)), table_(std::make_shared<const GeneratorTable>(gens_space_)), weight_(weight)
{
    std::map<int, std::vector<std::string>> labels;
    for (auto& m : all_monomials(*table_, weight)) {
        int d = monomial_degree(m, *table_);
        labels[d].push_back(monomial_label(m, *table_));
        auto& list = monos_[d];
        lookup_.emplace(m, std::make_pair(d, static_cast<std::uint32_t>(list.size())));
        list.push_back(std::move(m));
    }
    space_ = make_space(std::move(labels));
}

const std::vector<Monomial>& SymPower::monomials(int degree) const
{
    static const std::vector<Monomial> none;
    auto it = monos_.find(degree);
    return it == monos_.end() ? none : it->second;
}

std::optional<std::pair<int, std::uint32_t>> SymPower::find(const Monomial& m) const
{
    auto it = lookup_.find(m);
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

SymTruncation::SymTruncation(SpacePtr generators, int max_weight)
    : gens_space_(std::move(generators)), table_(std::make_shared<const GeneratorTable>(gens_space_)),
      max_weight_(max_weight)
{
    std::map<int, std::vector<std::vector<Monomial>>> grouped; // degree -> weight -> monomials
    for (int w = 0; w <= max_weight; ++w)
        for (auto& m : all_monomials(*table_, w)) {
            int d = monomial_degree(m, *table_);
            auto& slots = grouped[d];
            slots.resize(static_cast<std::size_t>(max_weight) + 1);
            slots[w].push_back(std::move(m));
        }
    std::map<int, std::vector<std::string>> labels;
    for (auto& [d, slots] : grouped) {
        auto& list = monos_[d];
        auto& offs = offsets_[d];
        auto& lab = labels[d];
        for (auto& slot : slots) {
            offs.push_back(list.size());
            for (auto& m : slot) {
                lab.push_back(monomial_label(m, *table_));
                lookup_.emplace(m, std::make_pair(d, static_cast<std::uint32_t>(list.size())));
                list.push_back(std::move(m));
            }
        }
        offs.push_back(list.size());
    }
    space_ = make_space(std::move(labels));
}

const Monomial& SymTruncation::monomial(int degree, std::size_t index) const { return monos_.at(degree).at(index); }

int SymTruncation::weight(int degree, std::size_t index) const
{
    return static_cast<int>(monomial(degree, index).size());
}

std::pair<std::size_t, std::size_t> SymTruncation::weight_range(int degree, int w) const
{
    auto it = offsets_.find(degree);
    if (it == offsets_.end() || w < 0 || w > max_weight_)
        return {0, 0};
    return {it->second[w], it->second[w + 1]};
}

std::optional<std::pair<int, std::uint32_t>> SymTruncation::find(const Monomial& m) const
{
    auto it = lookup_.find(m);
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::size_t SymTruncation::dim(int degree, int w) const
{
    auto [b, e] = weight_range(degree, w);
    return e - b;
}

SparseVec SymTruncation::coordinates(const Polynomial& p, int degree) const
{
    SparseVec v;
    v.reserve(p.size());
    for (const auto& [m, c] : p) {
        auto loc = find(m);
        if (!loc || loc->first != degree)
            throw InvalidMonomial(monomial_label(m, *table_) + " is not a degree-" + std::to_string(degree) +
                                  " element of the truncation");
        v.push_back({loc->second, c});
    }
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return v;
}

Polynomial SymTruncation::polynomial(int degree, const SparseVec& v) const
{
    Polynomial p;
    for (const auto& e : v)
        add_term(p, monomial(degree, e.index), e.value);
    return p;
}

bool PartialMap::is_unknown(int degree, std::size_t column) const
{
    auto it = unknown.find(degree);
    return it != unknown.end() && column < it->second.size() && it->second[column];
}

void PartialMap::mark_unknown(int degree, std::size_t column)
{
    auto& flags = unknown[degree];
    if (flags.size() <= column)
        flags.resize(map.source()->dim(degree), 0);
    flags[column] = 1;
}

bool PartialMap::has_unknown() const { return unknown_count() > 0; }

std::size_t PartialMap::unknown_count() const
{
    std::size_t n = 0;
    for (const auto& [_, f] : unknown)
        n += static_cast<std::size_t>(std::count(f.begin(), f.end(), 1));
    return n;
}

PartialMap compose(const PartialMap& a, const PartialMap& b)
{
    PartialMap c(compose(a.map, b.map));
    c.unknown = b.unknown;
    const int s = b.map.shift();
    for (const auto& [k, flags] : a.unknown) {
        const SparseMatrix* blk = b.map.find_block(k - s);
        if (!blk)
            continue;
        for (std::size_t r = 0; r < flags.size(); ++r)
            if (flags[r])
                for (const auto& e : blk->row(r))
                    c.mark_unknown(k - s, e.index);
    }
    return c;
}

PartialMap operator+(const PartialMap& a, const PartialMap& b)
{
    PartialMap c(a.map + b.map);
    c.unknown = a.unknown;
    for (const auto& [k, flags] : b.unknown)
        for (std::size_t j = 0; j < flags.size(); ++j)
            if (flags[j])
                c.mark_unknown(k, j);
    return c;
}

PartialMap scaled(const PartialMap& a, const Rational& c)
{
    PartialMap out(scaled(a.map, c));
    out.unknown = a.unknown;
    return out;
}

namespace {

bool zero_on_known_cols(const GradedMap& m, const PartialMap& a, const PartialMap* b)
{
    for (const auto& [k, blk] : m.blocks())
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (const auto& e : blk.row(r))
                if (!a.is_unknown(k, e.index) && !(b && b->is_unknown(k, e.index)))
                    return false;
    return true;
}

} // namespace

bool agree_on_known(const PartialMap& a, const PartialMap& b)
{
    return zero_on_known_cols(a.map - b.map, a, &b);
}

bool zero_on_known(const PartialMap& a) { return zero_on_known_cols(a.map, a, nullptr); }

PartialMap FormalGradedMap::order(int n) const
{
    auto it = orders.find(n);
    if (it != orders.end())
        return it->second;
    return PartialMap(GradedMap(source, target, shift));
}

namespace {

// Dual generator indices of a monomial of V, in the order of its factors,
// together with the number of odd factors.
std::vector<std::uint32_t> dual_word(const Monomial& m, const GeneratorTable& v, const GeneratorTable& dv, int& odd)
{
    std::vector<std::uint32_t> w;
    odd = 0;
    for (auto g : m) {
        w.push_back(dv.index(-v.degree(g), v.position(g)));
        odd += v.odd(g) ? 1 : 0;
    }
    return w;
}

int triangular_sign(int s) { return ((s * (s + 1) / 2) % 2) ? -1 : 1; }

void check_dual_pair(const SymPower& src, const SymPower& dual)
{
    if (src.weight() != dual.weight())
        throw DimensionMismatch("bracket dualization: weights differ");
    for (const auto& [k, labels] : src.generators()->components())
        if (dual.generators()->dim(-k) != labels.size())
            throw DimensionMismatch("bracket dualization: generator spaces are not dual");
}

} // namespace

GradedMap dualize_bracket(const GradedMap& ln, const SymPower& source_power, const SymPower& dual_power)
{
    check_dual_pair(source_power, dual_power);
    if (!same_space(ln.source(), source_power.space()))
        throw ShapeMismatch("dualize_bracket: bracket source is not the given symmetric power");
    const GeneratorTable& v = source_power.table();
    const GeneratorTable& dv = dual_power.table();
    GradedMap out(dual_power.generators(), dual_power.space(), ln.shift());
    std::map<int, std::vector<SparseVec>> cols;
    for (const auto& [k, blk] : ln.blocks()) {
        const auto& monos = source_power.monomials(k);
        const int xi_degree = -(k + ln.shift());
        auto& c = cols[xi_degree];
        c.resize(dual_power.generators()->dim(xi_degree));
        std::vector<std::vector<Entry>> acc(c.size());
        for (std::size_t b = 0; b < blk.rows(); ++b)
            for (const auto& e : blk.row(b)) {
                int odd = 0;
                auto w = dual_word(monos[e.index], v, dv, odd);
                int s = canonicalize(w, dv) * triangular_sign(odd);
                auto loc = dual_power.find(w);
                if (!loc)
                    throw InvalidMonomial("dual monomial missing from the dual symmetric power");
                acc[b].push_back({loc->second, s > 0 ? e.value : Rational(-e.value)});
            }
        for (std::size_t b = 0; b < acc.size(); ++b) {
            std::sort(acc[b].begin(), acc[b].end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
            fill_column(c, b, std::move(acc[b]));
        }
    }
    for (auto& [xi, c] : cols)
        out.set_block(xi, SparseMatrix::from_columns(dual_power.space()->dim(xi + ln.shift()), c.size(), c));
    return out;
}

GradedMap undualize_bracket(const GradedMap& dual, const SymPower& source_power, const SymPower& dual_power)
{
    check_dual_pair(source_power, dual_power);
    const GeneratorTable& v = source_power.table();
    const GeneratorTable& dv = dual_power.table();
    const int shift = dual.shift();
    GradedMap out(source_power.space(), source_power.generators(), shift);
    for (const auto& [k, labels] : source_power.space()->components()) {
        const int target_degree = k + shift;
        const std::size_t nt = source_power.generators()->dim(target_degree);
        if (nt == 0)
            continue;
        const int xi_degree = -target_degree;
        const SparseMatrix* blk = dual.find_block(xi_degree);
        if (!blk)
            continue;
        // dual monomial index -> (source monomial index, sign)
        std::unordered_map<std::uint32_t, std::pair<std::uint32_t, int>> back;
        const auto& monos = source_power.monomials(k);
        for (std::size_t j = 0; j < monos.size(); ++j) {
            int odd = 0;
            auto w = dual_word(monos[j], v, dv, odd);
            int s = canonicalize(w, dv) * triangular_sign(odd);
            auto loc = dual_power.find(w);
            if (!loc)
                throw InvalidMonomial("dual monomial missing from the dual symmetric power");
            back[loc->second] = {static_cast<std::uint32_t>(j), s};
        }
        SparseMatrix m(nt, labels.size());
        SparseMatrix t = blk->transpose();
        for (std::size_t b = 0; b < t.rows(); ++b)
            for (const auto& e : t.row(b)) {
                auto [j, s] = back.at(e.index);
                m.set(b, j, s > 0 ? e.value : Rational(-e.value));
            }
        out.set_block(k, std::move(m));
    }
    return out;
}

namespace {

GeneratorImages images_impl(const GradedMap& gen_map, const GeneratorTable& gens,
                            const std::function<const Monomial&(int, std::size_t)>& mono)
{
    GeneratorImages images(gens.size());
    for (const auto& [k, blk] : gen_map.blocks())
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (const auto& e : blk.row(r))
                add_term(images[gens.index(k, e.index)], mono(k + gen_map.shift(), r), e.value);
    return images;
}

} // namespace

GeneratorImages images_from_map(const GradedMap& gen_map, const SymPower& target)
{
    GeneratorTable gens(gen_map.source());
    return images_impl(gen_map, gens,
                       [&](int d, std::size_t r) -> const Monomial& { return target.monomials(d).at(r); });
}

GeneratorImages images_from_map(const GradedMap& gen_map, const SymTruncation& target)
{
    GeneratorTable gens(gen_map.source());
    return images_impl(gen_map, gens,
                       [&](int d, std::size_t r) -> const Monomial& { return target.monomial(d, r); });
}

namespace {

// Stores a column if every term lies in the truncation; returns false otherwise.
bool store_column(const Polynomial& p, int degree, const SymTruncation& trunc, SparseVec& out)
{
    out.clear();
    out.reserve(p.size());
    for (const auto& [m, c] : p) {
        auto loc = trunc.find(m);
        if (!loc)
            return false;
        if (loc->first != degree)
            throw InvalidMonomial("image has the wrong degree");
        out.push_back({loc->second, c});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return true;
}

} // namespace

PartialMap extend_derivation(const GeneratorImages& images, int shift, const SymTruncation& trunc)
{
    const GeneratorTable& gens = trunc.table();
    if (images.size() != gens.size())
        throw DimensionMismatch("derivation images do not match the generators");
    PartialMap out(GradedMap(trunc.space(), trunc.space(), shift));
    for (const auto& [k, labels] : trunc.space()->components()) {
        const std::size_t n = labels.size();
        std::vector<SparseVec> cols(n);
        std::vector<std::size_t> unknown;
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            const Monomial& m = trunc.monomial(k, j);
            Polynomial img;
            int prefix = 0;
            for (std::size_t t = 0; t < m.size(); ++t) {
                const Polynomial& gi = images[m[t]];
                const bool flip = (shift & 1) && (prefix & 1);
                prefix += gens.degree(m[t]);
                for (const auto& [q, c] : gi) {
                    std::vector<std::uint32_t> word(m.begin(), m.begin() + static_cast<long>(t));
                    word.insert(word.end(), q.begin(), q.end());
                    word.insert(word.end(), m.begin() + static_cast<long>(t) + 1, m.end());
                    int s = canonicalize(word, gens);
                    if (s == 0)
                        continue;
                    if (flip)
                        s = -s;
                    add_term(img, word, s > 0 ? c : Rational(-c));
                }
            }
            if (img.empty())
                continue;
            if (!store_column(img, k + shift, trunc, cols[j])) {
                cols[j].clear();
                unknown.push_back(j);
            } else {
                any = true;
            }
        }
        if (any)
            out.map.set_block(k, SparseMatrix::from_columns(trunc.space()->dim(k + shift), n, cols));
        for (auto j : unknown)
            out.mark_unknown(k, j);
    }
    return out;
}

PartialMap extend_derivation(const GradedMap& gen_map, const SymPower& target, const SymTruncation& trunc)
{
    return extend_derivation(images_from_map(gen_map, target), gen_map.shift(), trunc);
}

FormalGradedMap extend_algebra_map(const std::vector<GeneratorImages>& images_by_order, const SymTruncation& trunc,
                                   int max_order)
{
    const GeneratorTable& gens = trunc.table();
    using Series = std::vector<Polynomial>; // index = lambda order
    auto product = [&](const Series& a, const Series& b) {
        Series out(static_cast<std::size_t>(max_order) + 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
                if (!a[i].empty() && !b[j].empty())
                    add_scaled(out[i + j], multiply(a[i], b[j], gens), Rational(1));
        return out;
    };
    std::vector<Series> gen_series(gens.size(), Series(static_cast<std::size_t>(max_order) + 1));
    for (std::size_t n = 0; n < images_by_order.size() && static_cast<int>(n) <= max_order; ++n) {
        if (images_by_order[n].size() != gens.size())
            throw DimensionMismatch("algebra map images do not match the generators");
        for (std::size_t g = 0; g < gens.size(); ++g)
            gen_series[g][n] = images_by_order[n][g];
    }

    FormalGradedMap out;
    out.source = out.target = trunc.space();
    out.shift = 0;
    out.max_order = max_order;
    for (int n = 0; n <= max_order; ++n)
        out.orders.emplace(n, PartialMap(GradedMap(trunc.space(), trunc.space(), 0)));

    for (const auto& [k, labels] : trunc.space()->components()) {
        const std::size_t dim = labels.size();
        std::vector<std::vector<SparseVec>> cols(static_cast<std::size_t>(max_order) + 1,
                                                 std::vector<SparseVec>(dim));
        std::vector<std::vector<std::size_t>> unknown(static_cast<std::size_t>(max_order) + 1);
        for (std::size_t j = 0; j < dim; ++j) {
            const Monomial& m = trunc.monomial(k, j);
            Series acc(static_cast<std::size_t>(max_order) + 1);
            acc[0][Monomial{}] = 1;
            for (auto g : m)
                acc = product(acc, gen_series[g]);
            for (int n = 0; n <= max_order; ++n) {
                if (acc[n].empty())
                    continue;
                if (!store_column(acc[n], k, trunc, cols[n][j])) {
                    cols[n][j].clear();
                    unknown[n].push_back(j);
                }
            }
        }
        for (int n = 0; n <= max_order; ++n) {
            PartialMap& pm = out.orders.at(n);
            pm.map.set_block(k, SparseMatrix::from_columns(dim, dim, cols[n]));
            for (auto j : unknown[n])
                pm.mark_unknown(k, j);
        }
    }
    for (auto& [_, pm] : out.orders)
        pm.map.prune();
    return out;
}

GradedMap sym_map(const GradedMap& f, const SymTruncation& source, const SymTruncation& target)
{
    if (f.shift() != 0 || !same_space(f.source(), source.generators()) || !same_space(f.target(), target.generators()))
        throw ShapeMismatch("sym_map needs a degree-0 map between the generator spaces");
    SymPower one(target.generators(), 1);
    GeneratorImages images = images_from_map(f, one);
    const GeneratorTable& tg = target.table();
    GradedMap out(source.space(), target.space(), 0);
    for (const auto& [k, labels] : source.space()->components()) {
        std::vector<SparseVec> cols(labels.size());
        bool any = false;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            Polynomial acc;
            acc[Monomial{}] = 1;
            for (auto g : source.monomial(k, j)) {
                acc = multiply(acc, images[g], tg);
                if (acc.empty())
                    break;
            }
            if (acc.empty())
                continue;
            cols[j] = target.coordinates(acc, k);
            any = true;
        }
        if (any)
            out.set_block(k, SparseMatrix::from_columns(target.space()->dim(k), labels.size(), cols));
    }
    return out;
}

SparseVec evaluate_bracket(const GradedMap& ln, const SymPower& power, const std::vector<std::uint32_t>& inputs,
                           int& target_degree)
{
    std::vector<std::uint32_t> w = inputs;
    const GeneratorTable& gens = power.table();
    int s = canonicalize(w, gens);
    target_degree = monomial_degree(w, gens) + ln.shift();
    if (s == 0)
        return {};
    auto loc = power.find(w);
    if (!loc)
        throw InvalidMonomial("bracket input has the wrong arity");
    Rational factor = s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        for (std::size_t f = 2; f <= j - i; ++f)
            factor *= static_cast<long>(f);
        i = j;
    }
    const SparseMatrix* blk = ln.find_block(loc->first);
    if (!blk)
        return {};
    SparseVec out;
    for (std::size_t r = 0; r < blk->rows(); ++r) {
        Rational v = blk->at(r, loc->second);
        if (!is_zero(v))
            out.push_back({static_cast<std::uint32_t>(r), factor * v});
    }
    return out;
}

} // namespace moller
