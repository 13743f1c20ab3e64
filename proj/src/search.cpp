#include "divcode/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "divcode/errors.hpp"

namespace divcode {

std::vector<int> SearchSpec::weight_set(int n) const {
    std::vector<int> out;
    if (!allowed_weights.empty()) {
        for (int w : allowed_weights)
            if (w <= n) out.push_back(w);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    int hi = d_max > 0 ? std::min(d_max, n) : n;
    for (int w = std::max(1, d_min); w <= hi; ++w)
        if (w % std::max(1, divisor) == 0) out.push_back(w);
    return out;
}

std::string SearchSpec::canonical_text() const {
    std::ostringstream os;
    os << "mode=" << int(mode) << " n=" << target_n << " k=" << target_k;
    os << " weights=";
    for (int w : weight_set(target_n + new_coords_max)) os << w << ",";
    os << " full=" << require_full_length << " w0=" << seed_word_weight
       << " newmax=" << new_coords_max << "\n";
    for (const auto& s : seeds) os << s.generator().to_text() << ";\n";
    return os.str();
}

uint64_t SearchSpec::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : canonical_text()) {
        h ^= uint8_t(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace detail {

static double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

LabelStore::LabelStore(const SearchSpec& spec, const std::string& path)
    : spec_hash_(spec.hash()), path_(path) {
    last_flush_ = now_seconds();
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    if (!std::getline(in, line)) return;
    std::istringstream hs(line);
    std::string tag, hex;
    hs >> tag >> hex;
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)spec_hash_);
    if (tag != "spec" || hex != buf)
        throw SpecInfeasible("checkpoint file belongs to a different search spec");
    while (std::getline(in, line)) {
        if (line == "complete") {
            complete_on_load_ = true;
            continue;
        }
        if (line.empty()) continue;
        // rows of the canonical matrix joined by '|'
        std::string text = line;
        for (auto& ch : text)
            if (ch == '|') ch = '\n';
        Code code{BitMatrix::from_text(text)};
        CanonicalLabel label = canonical_label(code);
        entries_.emplace(label.canonical_gen.to_text(), std::make_pair(code, label));
    }
}

LabelStore::~LabelStore() {
    if (!path_.empty()) {
        std::lock_guard<std::mutex> lock(mu_);
        flush_locked();
    }
}

bool LabelStore::add(const Code& code, const CanonicalLabel& label) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = entries_.emplace(label.canonical_gen.to_text(), std::make_pair(code, label));
    (void)it;
    if (fresh && !path_.empty() && now_seconds() - last_flush_ > 60.0) {
        flush_locked();
        last_flush_ = now_seconds();
    }
    return fresh;
}

void LabelStore::flush_locked() {
    if (path_.empty()) return;
    std::ofstream out(path_ + ".tmp", std::ios::trunc);
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)spec_hash_);
    out << "spec " << buf << "\n";
    for (const auto& [key, value] : entries_) {
        std::string text = value.second.canonical_gen.to_text();
        std::string line;
        for (char ch : text) {
            if (ch == '\n')
                line += '|';
            else
                line += ch;
        }
        if (!line.empty() && line.back() == '|') line.pop_back();
        out << line << "\n";
    }
    out.close();
    std::rename((path_ + ".tmp").c_str(), path_.c_str());
}

void LabelStore::mark_complete() {
    if (path_.empty()) return;
    std::lock_guard<std::mutex> lock(mu_);
    flush_locked();
    std::ofstream out(path_, std::ios::app);
    out << "complete\n";
}

std::vector<std::pair<Code, CanonicalLabel>> LabelStore::sorted_entries() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::pair<Code, CanonicalLabel>> out;
    out.reserve(entries_.size());
    for (const auto& [key, value] : entries_) out.push_back(value);
    return out;  // map order = label order
}

size_t LabelStore::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= count) break;
                    fn(i);
                }
            } catch (...) {
                errors[size_t(t)] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

bool satisfies_spec(const Code& c, const SearchSpec& spec) {
    if (spec.target_k != 0 && c.dimension() != spec.target_k) return false;
    if (spec.require_full_length && !c.full_length()) return false;
    auto ws = spec.weight_set(c.length());
    for (int w : c.weight_enumerator().nonzero_weights())
        if (!std::binary_search(ws.begin(), ws.end(), w)) return false;
    return true;
}

}  // namespace detail

}  // namespace divcode
