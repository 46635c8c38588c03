#include "motext/resolution.hpp"

#include "motext/parallel.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace motext {

using f2::BitVector;
using f2::Eliminator;

size_t Slice::prefix(int w) const
{
    return static_cast<size_t>(std::upper_bound(weight.begin(), weight.end(), w) - weight.begin());
}

Resolution::Resolution(const MotivicProfile& profile) : profile_(profile), alg_(MilnorAlgebra::get(profile)) {}

int Resolution::max_t() const
{
    if (frontier_.empty())
        return -1;
    return *std::min_element(frontier_.begin(), frontier_.end());
}

void Resolution::require_ext(int s, int f) const
{
    if (!covers_ext(s, f)) {
        std::ostringstream os;
        os << "region too small: Ext at (s,f) = (" << s << "," << f << ") needs steps through t = " << s + f
           << " in filtrations " << f << " and " << f + 1 << " (resolve with --max-stem " << s << " --max-f " << f
           << " or larger)";
        throw ResolutionError(os.str());
    }
}

size_t Resolution::total_generators() const
{
    size_t n = 0;
    for (const auto& g : gens_)
        n += g.size();
    return n;
}

std::pair<uint32_t, uint32_t> Resolution::generators_in_degree(int f, int t) const
{
    if (f < 0 || f >= static_cast<int>(gens_.size()))
        return {0, 0};
    const auto& g = gens_[f];
    auto lo = std::lower_bound(g.begin(), g.end(), t, [](const Generator& a, int v) { return a.t < v; });
    auto hi = std::upper_bound(g.begin(), g.end(), t, [](int v, const Generator& a) { return v < a.t; });
    return {static_cast<uint32_t>(lo - g.begin()), static_cast<uint32_t>(hi - g.begin())};
}

int Resolution::tau_power(int f, uint32_t g, const ModuleTerm& term) const
{
    if (mode() == Mode::classical)
        return 0;
    return gens_[f][g].w - gens_[f - 1][term.gen].w - alg_->weight(term.milnor);
}

void Resolution::ensure_filtration(int f)
{
    while (static_cast<int>(gens_.size()) <= f) {
        gens_.emplace_back();
        d_.emplace_back();
        frontier_.push_back(-1);
    }
}

Slice Resolution::build_slice(int f, int t) const
{
    Slice s;
    s.f = f;
    s.t = t;
    const auto& gens = gens_[f];
    struct Entry {
        int w;
        uint32_t g;
        uint32_t local;
    };
    std::vector<Entry> entries;
    uint32_t offset = 0;
    for (uint32_t g = 0; g < gens.size() && gens[g].t <= t; ++g) {
        s.gen_offset.push_back(offset);
        const int deg = t - gens[g].t;
        const size_t dim = alg_->dim(deg);
        for (size_t j = 0; j < dim; ++j)
            entries.push_back({gens[g].w + alg_->weight(alg_->id(deg, j)), g, static_cast<uint32_t>(j)});
        offset += static_cast<uint32_t>(dim);
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.w < b.w; });
    s.coord_of.assign(offset, 0);
    s.gen.reserve(entries.size());
    for (uint32_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        s.gen.push_back(e.g);
        s.milnor.push_back(alg_->id(t - gens[e.g].t, e.local));
        s.weight.push_back(e.w);
        s.coord_of[s.gen_offset[e.g] + e.local] = i;
    }
    return s;
}

const Slice& Resolution::slice(int f, int t) const
{
    if (!covers_step(f, t))
        throw ResolutionError("slice (" + std::to_string(f) + "," + std::to_string(t) + ") is outside the completed region");
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->slices[{f, t}];
    if (!slot)
        slot = std::make_shared<const Slice>(build_slice(f, t));
    return *slot;
}

BitVector Resolution::to_vector(int f, int t, const ModuleElement& x) const
{
    const Slice& s = slice(f, t);
    BitVector v(s.size());
    for (const auto& term : x) {
        if (gens_[f][term.gen].t + alg_->degree(term.milnor) != t)
            throw std::invalid_argument("to_vector: inhomogeneous element");
        v.flip(s.coord(term.gen, alg_->local(term.milnor)));
    }
    return v;
}

ModuleElement Resolution::from_vector(int f, int t, const BitVector& v) const
{
    const Slice& s = slice(f, t);
    ModuleElement x;
    for (size_t i = v.next_set(0); i != BitVector::npos; i = v.next_set(i + 1))
        x.push_back({s.gen[i], s.milnor[i]});
    std::sort(x.begin(), x.end());
    return x;
}

namespace {

void normalize(ModuleElement& x)
{
    std::sort(x.begin(), x.end());
    size_t out = 0;
    for (size_t i = 0; i < x.size();) {
        size_t j = i;
        while (j < x.size() && x[j] == x[i])
            ++j;
        if ((j - i) & 1)
            x[out++] = x[i];
        i = j;
    }
    x.resize(out);
}

}  // namespace

ModuleElement Resolution::act(uint32_t milnor, const ModuleElement& x) const
{
    ModuleElement out;
    for (const auto& term : x)
        for (uint32_t id : alg_->multiply(milnor, term.milnor))
            out.push_back({term.gen, id});
    normalize(out);
    return out;
}

ModuleElement Resolution::apply_d(int f, const ModuleElement& x) const
{
    ModuleElement out;
    for (const auto& term : x)
        for (const auto& dt : d_[f][term.gen])
            for (uint32_t id : alg_->multiply(term.milnor, dt.milnor))
                out.push_back({dt.gen, id});
    normalize(out);
    return out;
}

BitVector Resolution::image_row(int f, int t, uint32_t g, uint32_t milnor) const
{
    const Slice& cols = slice(f - 1, t);
    BitVector row(cols.size());
    for (const auto& dt : d_[f][g])
        for (uint32_t id : alg_->multiply(milnor, dt.milnor))
            row.flip(cols.coord(dt.gen, alg_->local(id)));
    return row;
}

std::shared_ptr<const Eliminator> Resolution::image(int f, int t) const
{
    if (f < 1 || !covers_step(f, t))
        throw ResolutionError("image: step (" + std::to_string(f) + "," + std::to_string(t) + ") not available");
    {
        std::lock_guard lock(cache_->mutex);
        for (auto it = cache_->lru.begin(); it != cache_->lru.end(); ++it) {
            if (it->first == std::make_pair(f, t)) {
                cache_->lru.splice(cache_->lru.begin(), cache_->lru, it);
                return it->second;
            }
        }
    }
    const Slice& rows = slice(f, t);
    const Slice& cols = slice(f - 1, t);
    auto e = std::make_shared<Eliminator>(cols.size(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        e->insert(image_row(f, t, rows.gen[i], rows.milnor[i]));
    std::lock_guard lock(cache_->mutex);
    const size_t bytes = e->memory_bytes();
    cache_->lru.emplace_front(std::make_pair(f, t), e);
    cache_->bytes += bytes;
    while (cache_->bytes > cache_->budget && cache_->lru.size() > 1) {
        cache_->bytes -= cache_->lru.back().second->memory_bytes();
        cache_->lru.pop_back();
    }
    return e;
}

void Resolution::set_cache_budget(size_t bytes) const
{
    std::lock_guard lock(cache_->mutex);
    cache_->budget = bytes;
}

std::vector<Resolution::Kernel> Resolution::step(int f, int t, const std::vector<Kernel>& incoming, bool replay,
                                                 int threads)
{
    std::vector<Kernel> out;
    if (f == 0) {
        if (!replay && t == 0) {
            gens_[0].push_back({0, 0, 0, 0});
            d_[0].emplace_back();
        }
        if (!replay)
            frontier_[0] = t;
        if (t == 0)
            return out;
        // the augmentation vanishes on V(0, t) for t > 0
        const Slice& s = slice(0, t);
        for (size_t i = 0; i < s.size(); ++i)
            out.push_back({s.weight[i], BitVector::unit(s.size(), i)});
        return out;
    }

    const Slice& cols = slice(f - 1, t);
    struct Pair {
        int w;
        uint32_t g;
        uint32_t milnor;
    };
    std::vector<Pair> pairs;
    {
        const auto& gens = gens_[f];
        for (uint32_t g = 0; g < gens.size(); ++g) {
            if (gens[g].t > t || (!replay && gens[g].t == t))
                break;
            const int deg = t - gens[g].t;
            for (size_t j = 0; j < alg_->dim(deg); ++j) {
                uint32_t id = alg_->id(deg, j);
                pairs.push_back({gens[g].w + alg_->weight(id), g, id});
            }
        }
        std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.w < b.w; });
    }

    auto elim = std::make_shared<Eliminator>(cols.size(), pairs.size() + (replay ? 0 : incoming.size()));
    auto make_row = [&](uint32_t g, uint32_t milnor) {
        BitVector row(cols.size());
        for (const auto& dt : d_[f][g])
            for (uint32_t id : alg_->multiply(milnor, dt.milnor))
                row.flip(cols.coord(dt.gen, alg_->local(id)));
        return row;
    };

    size_t pi = 0, ki = 0;
    const size_t kend = replay ? 0 : incoming.size();
    std::vector<BitVector> batch;
    while (pi < pairs.size() || ki < kend) {
        int w = pi < pairs.size() ? pairs[pi].w : incoming[ki].w;
        if (ki < kend)
            w = std::min(w, incoming[ki].w);
        size_t pj = pi;
        while (pj < pairs.size() && pairs[pj].w == w)
            ++pj;
        batch.assign(pj - pi, BitVector());
        parallel_for(pj - pi, threads, [&](size_t k) { batch[k] = make_row(pairs[pi + k].g, pairs[pi + k].milnor); });
        for (auto& row : batch)
            if (auto combo = elim->insert(std::move(row)))
                out.push_back({w, std::move(*combo)});
        pi = pj;
        for (; ki < kend && incoming[ki].w == w; ++ki) {
            BitVector r = elim->reduce(incoming[ki].v);
            if (r.is_zero())
                continue;
            Generator g{static_cast<uint32_t>(gens_[f].size()), f, t, w};
            gens_[f].push_back(g);
            d_[f].push_back(from_vector(f - 1, t, r));
            elim->insert(std::move(r));
        }
    }
    for (auto& k : out)
        k.v.resize(elim->inserted());
    if (!replay)
        frontier_[f] = t;

    std::lock_guard lock(cache_->mutex);
    const size_t bytes = elim->memory_bytes();
    const bool cached = std::any_of(cache_->lru.begin(), cache_->lru.end(),
                                    [&](const auto& e) { return e.first == std::make_pair(f, t); });
    if (!cached && bytes <= cache_->budget / 4) {
        cache_->lru.emplace_front(std::make_pair(f, t), elim);
        cache_->bytes += bytes;
        while (cache_->bytes > cache_->budget && cache_->lru.size() > 1) {
            cache_->bytes -= cache_->lru.back().second->memory_bytes();
            cache_->lru.pop_back();
        }
    }
    return out;
}

void Resolution::extend(int max_stem, int max_f, int threads, const Progress& progress)
{
    if (max_stem < 0 || max_f < 0)
        throw std::invalid_argument("extend: bounds must be non-negative");
    const int fmax = max_f + 1;
    const int tmax = max_stem + max_f;
    if (tmax > profile_.degree_cap)
        throw ResolutionError("extend: internal degree " + std::to_string(tmax) + " exceeds the degree cap " +
                              std::to_string(profile_.degree_cap) + " of the algebra");
    ensure_filtration(fmax);
    for (int t = 0; t <= tmax; ++t) {
        int f0 = 0;
        while (f0 <= fmax && frontier_[f0] >= t)
            ++f0;
        if (f0 > fmax)
            continue;
        std::vector<Kernel> kern;
        if (f0 > 0)
            kern = step(f0 - 1, t, {}, true, threads);
        for (int f = f0; f <= fmax; ++f) {
            kern = step(f, t, kern, false, threads);
            if (progress)
                progress(f, t);
        }
    }
}

std::string Resolution::check_dd_zero() const
{
    for (int f = 2; f < static_cast<int>(gens_.size()); ++f)
        for (uint32_t g = 0; g < gens_[f].size(); ++g)
            if (!apply_d(f - 1, d_[f][g]).empty())
                return std::to_string(f) + ":" + std::to_string(g);
    // the augmentation kills the image of d_1
    if (gens_.size() > 1)
        for (uint32_t g = 0; g < gens_[1].size(); ++g)
            for (const auto& term : d_[1][g])
                if (term.milnor == alg_->unit())
                    return "1:" + std::to_string(g);
    return {};
}

bool Resolution::same_as(const Resolution& o) const
{
    return profile_ == o.profile_ && frontier_ == o.frontier_ && gens_ == o.gens_ && d_ == o.d_;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr char kMagic[8] = {'M', 'O', 'T', 'E', 'X', 'T', 'C', 'K'};
constexpr uint32_t kVersion = 1;

class Writer {
public:
    void bytes(const void* p, size_t n)
    {
        const auto* c = static_cast<const unsigned char*>(p);
        buf_.insert(buf_.end(), c, c + n);
    }
    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }
    void i32(int32_t v) { u32(static_cast<uint32_t>(v)); }
    void u64(uint64_t v)
    {
        for (int i = 0; i < 8; ++i)
            buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }
    const std::vector<unsigned char>& data() const { return buf_; }

private:
    std::vector<unsigned char> buf_;
};

class Reader {
public:
    Reader(const unsigned char* p, size_t n) : p_(p), n_(n) {}
    void need(size_t k)
    {
        if (pos_ + k > n_)
            throw ResolutionError("checkpoint is truncated");
    }
    uint8_t u8()
    {
        need(1);
        return p_[pos_++];
    }
    uint32_t u32()
    {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<uint32_t>(p_[pos_++]) << (8 * i);
        return v;
    }
    int32_t i32() { return static_cast<int32_t>(u32()); }
    uint64_t u64()
    {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<uint64_t>(p_[pos_++]) << (8 * i);
        return v;
    }
    size_t pos() const { return pos_; }

private:
    const unsigned char* p_;
    size_t n_;
    size_t pos_ = 0;
};

uint64_t fnv1a(const unsigned char* p, size_t n)
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

void Resolution::save(std::ostream& out) const
{
    Writer w;
    w.bytes(kMagic, sizeof kMagic);
    w.u32(kVersion);
    w.u8(static_cast<uint8_t>(profile_.mode));
    for (int i = 0; i < kMaxIndex; ++i)
        w.u8(profile_.tau_heights[i]);
    for (int i = 0; i < kMaxIndex; ++i)
        w.u32(profile_.xi_heights[i]);
    w.i32(profile_.degree_cap);
    w.u32(static_cast<uint32_t>(frontier_.size()));
    for (int ft : frontier_)
        w.i32(ft);
    for (size_t f = 0; f < gens_.size(); ++f) {
        w.u32(static_cast<uint32_t>(gens_[f].size()));
        for (uint32_t g = 0; g < gens_[f].size(); ++g) {
            const Generator& gen = gens_[f][g];
            w.i32(gen.t);
            w.i32(gen.w);
            w.u32(static_cast<uint32_t>(d_[f][g].size()));
            for (const auto& term : d_[f][g]) {
                w.u32(term.gen);
                w.u32(alg_->local(term.milnor));
                w.u32(static_cast<uint32_t>(tau_power(static_cast<int>(f), g, term)));
            }
        }
    }
    w.u64(fnv1a(w.data().data(), w.data().size()));
    out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.data().size()));
    if (!out)
        throw ResolutionError("checkpoint write failed");
}

Resolution Resolution::load(std::istream& in)
{
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < sizeof kMagic + 4 + 8 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
        throw ResolutionError("not a checkpoint (bad magic or truncated)");
    Reader r(buf.data(), buf.size() - 8);
    for (size_t i = 0; i < sizeof kMagic; ++i)
        r.u8();
    uint32_t version = r.u32();
    if (version != kVersion)
        throw ResolutionError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kVersion) + ")");
    Reader tail(buf.data() + buf.size() - 8, 8);
    if (tail.u64() != fnv1a(buf.data(), buf.size() - 8))
        throw ResolutionError("checkpoint checksum mismatch (corrupt or truncated)");

    MotivicProfile p;
    uint8_t mode = r.u8();
    if (mode > 1)
        throw ResolutionError("checkpoint has an invalid mode");
    p.mode = static_cast<Mode>(mode);
    for (int i = 0; i < kMaxIndex; ++i)
        p.tau_heights[i] = r.u8();
    for (int i = 0; i < kMaxIndex; ++i)
        p.xi_heights[i] = r.u32();
    p.degree_cap = r.i32();
    try {
        p.validate();
    }
    catch (const std::exception& e) {
        throw ResolutionError(std::string("checkpoint profile is invalid: ") + e.what());
    }
    Resolution res(p);
    const MilnorAlgebra& alg = *res.alg_;
    uint32_t nf = r.u32();
    if (nf > 4096)
        throw ResolutionError("checkpoint has an implausible filtration count");
    res.frontier_.resize(nf);
    for (auto& ft : res.frontier_)
        ft = r.i32();
    res.gens_.resize(nf);
    res.d_.resize(nf);
    for (uint32_t f = 0; f < nf; ++f) {
        uint32_t n = r.u32();
        for (uint32_t g = 0; g < n; ++g) {
            Generator gen{g, static_cast<int>(f), r.i32(), r.i32()};
            if (gen.t < 0 || gen.t > p.degree_cap || (g > 0 && gen.t < res.gens_[f][g - 1].t))
                throw ResolutionError("checkpoint generator table is inconsistent");
            uint32_t nt = r.u32();
            ModuleElement d;
            d.reserve(nt);
            for (uint32_t k = 0; k < nt; ++k) {
                uint32_t target = r.u32(), local = r.u32(), tp = r.u32();
                if (f == 0 || target >= res.gens_[f - 1].size())
                    throw ResolutionError("checkpoint differential refers to a missing generator");
                const Generator& tg = res.gens_[f - 1][target];
                int deg = gen.t - tg.t;
                if (deg < 0 || local >= alg.dim(deg))
                    throw ResolutionError("checkpoint differential term is out of range");
                ModuleTerm term{target, alg.id(deg, local)};
                int expect = p.mode == Mode::classical ? 0 : gen.w - tg.w - alg.weight(term.milnor);
                if (static_cast<int>(tp) != expect)
                    throw ResolutionError("checkpoint tau power is inconsistent with weights");
                d.push_back(term);
            }
            std::sort(d.begin(), d.end());
            res.gens_[f].push_back(gen);
            res.d_[f].push_back(std::move(d));
        }
    }
    if (r.pos() != buf.size() - 8)
        throw ResolutionError("checkpoint has trailing data");
    return res;
}

void Resolution::save_file(const std::string& path) const
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ResolutionError("cannot open " + tmp + " for writing");
        save(out);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ResolutionError("cannot move checkpoint into place at " + path);
}

Resolution Resolution::load_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ResolutionError("cannot open checkpoint " + path);
    return load(in);
}

}  // namespace motext
