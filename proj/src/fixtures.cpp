#include "divcode/fixtures.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divcode/canonical.hpp"
#include "divcode/errors.hpp"

namespace divcode {

namespace {

// Compact SHA-256, enough to guard fixture files against drift.
struct Sha256 {
    uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                     0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    uint64_t len = 0;
    uint8_t buf[64];
    size_t fill = 0;

    static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void block(const uint8_t* p) {
        static const uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
            0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
            0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
            0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
            0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
            0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
            0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
            0xc67178f2};
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = uint32_t(p[4 * i]) << 24 | uint32_t(p[4 * i + 1]) << 16 |
                   uint32_t(p[4 * i + 2]) << 8 | uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + S1 + ch + K[i] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }

    void update(const uint8_t* p, size_t n) {
        len += n;
        while (n) {
            size_t take = std::min(n, sizeof buf - fill);
            std::memcpy(buf + fill, p, take);
            fill += take;
            p += take;
            n -= take;
            if (fill == 64) {
                block(buf);
                fill = 0;
            }
        }
    }

    std::string hex() {
        uint64_t bits = len * 8;
        uint8_t pad = 0x80;
        update(&pad, 1);
        uint8_t zero = 0;
        while (fill != 56) update(&zero, 1);
        uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = uint8_t(bits >> (56 - 8 * i));
        update(lenb, 8);
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (uint32_t v : h)
            for (int i = 28; i >= 0; i -= 4) out += digits[(v >> i) & 0xf];
        return out;
    }
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path locate_dir(const std::string& hint) {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates;
    if (!hint.empty()) candidates.push_back(hint);
    if (const char* env = std::getenv("DIVCODE_FIXTURES")) candidates.push_back(env);
    fs::path cur = fs::current_path();
    for (int depth = 0; depth < 5; ++depth) {
        candidates.push_back(cur / "fixtures");
        if (cur.has_parent_path() && cur.parent_path() != cur)
            cur = cur.parent_path();
        else
            break;
    }
    for (const auto& c : candidates)
        if (fs::exists(c / "manifest.json")) return c;
    throw ParseError("fixture directory not found (set DIVCODE_FIXTURES or pass a path)");
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    Sha256 s;
    s.update(reinterpret_cast<const uint8_t*>(data.data()), data.size());
    return s.hex();
}

FixtureSet FixtureSet::load_dir(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path dir = locate_dir(path);
    nlohmann::json manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
    FixtureSet set;
    for (const auto& e : manifest) {
        FixtureEntry fe;
        fe.id = e.at("id").get<std::string>();
        fe.file = e.at("file").get<std::string>();
        fe.origin = e.value("origin", "");
        fe.nrows = e.at("nrows").get<int>();
        fe.ncols = e.at("ncols").get<int>();
        fe.sha256 = e.at("sha256").get<std::string>();
        std::string body = read_file(dir / fe.file);
        if (sha256_hex(body) != fe.sha256)
            throw ParseError("fixture " + fe.id + " does not match its recorded checksum");
        fe.matrix = BitMatrix::from_text(body);
        if (fe.matrix.nrows() != fe.nrows || fe.matrix.ncols() != fe.ncols)
            throw ParseError("fixture " + fe.id + " has unexpected shape");
        if (e.contains("enumerator")) {
            std::map<int, int64_t> en;
            for (auto it = e["enumerator"].begin(); it != e["enumerator"].end(); ++it)
                en[std::stoi(it.key())] = it.value().get<int64_t>();
            fe.enumerator = std::move(en);
        }
        if (e.contains("weights")) fe.weights = e["weights"].get<std::vector<int>>();
        if (e.contains("d")) fe.d = e["d"].get<int>();
        if (e.contains("divisibility")) fe.divisibility = e["divisibility"].get<int>();
        if (e.contains("aut_order"))
            fe.aut_order = BigInt(e["aut_order"].get<int64_t>());
        if (e.contains("projective")) fe.projective = e["projective"].get<bool>();
        set.index_[fe.id] = set.entries_.size();
        set.entries_.push_back(std::move(fe));
    }
    return set;
}

const FixtureEntry& FixtureSet::get(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ParseError("unknown fixture id: " + id);
    return entries_[it->second];
}

std::vector<FixtureCheck> FixtureSet::verify_all(bool include_aut_orders) const {
    std::vector<FixtureCheck> out;
    auto push = [&](const std::string& fx, const std::string& chk, bool pass, std::string detail) {
        out.push_back({fx, chk, pass, std::move(detail)});
    };
    for (const auto& fe : entries_) {
        Code c = fe.code();
        push(fe.id, "rank", c.dimension() == fe.nrows,
             "rank " + std::to_string(c.dimension()) + " rows " + std::to_string(fe.nrows));
        if (fe.enumerator) {
            bool ok = true;
            const auto& dist = c.weight_distribution();
            for (int i = 0; i <= c.length(); ++i) {
                auto it = fe.enumerator->find(i);
                int64_t expect = it == fe.enumerator->end() ? 0 : it->second;
                if (dist[size_t(i)] != expect) ok = false;
            }
            push(fe.id, "enumerator", ok, ok ? "exact match" : "mismatch");
        }
        if (fe.weights) {
            auto ws = c.weight_enumerator().nonzero_weights();
            std::vector<int> expect = *fe.weights;
            std::sort(expect.begin(), expect.end());
            bool ok = true;
            for (int w : ws)
                if (!std::binary_search(expect.begin(), expect.end(), w)) ok = false;
            push(fe.id, "weights", ok, ok ? "inside the allowed set" : "stray weight");
        }
        if (fe.d) push(fe.id, "min_distance", c.minimum_distance() == *fe.d, std::to_string(c.minimum_distance()));
        if (fe.divisibility)
            push(fe.id, "divisibility", c.divisibility() == *fe.divisibility, std::to_string(c.divisibility()));
        if (fe.projective)
            push(fe.id, "projective", c.projective() == *fe.projective, c.projective() ? "true" : "false");
        if (fe.aut_order && include_aut_orders) {
            BigInt order = aut_group_order(c);
            push(fe.id, "aut_order", order == *fe.aut_order, order.to_string());
        }
    }
    return out;
}

std::map<int, int64_t> FixtureSet::w56_10_24_enumerator() {
    return {{0, 1}, {24, 399}, {28, 224}, {32, 399}, {56, 1}};
}

}  // namespace divcode
