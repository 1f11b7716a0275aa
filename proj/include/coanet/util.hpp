#pragma once

#include <cstdarg>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace coanet {

// Deterministic RNG. All randomized procedures take explicit seeds and pull
// every draw through this wrapper, never through distribution objects whose
// output is implementation-defined. derive() yields an independent stream, so
// per-tree / per-fold / per-sample streams do not depend on consumption order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t u64();
    // uniform in [0, n); n must be > 0
    std::uint64_t below(std::uint64_t n);
    // uniform integer in [lo, hi] inclusive
    int range(int lo, int hi);
    // uniform in [0, 1)
    double real01();
    double real(double lo, double hi);
    bool chance(double p);

    Rng derive(std::uint64_t stream) const;

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(below(v.size()))];
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;  // splitmix64 state
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a 64-bit content digest. Not cryptographic; used for manifest
// change-detection where determinism is the only requirement.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex64(std::uint64_t v);

// printf-style formatting into std::string
std::string strf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

// shortest round-trippable-ish rendering with 12 significant digits
std::string format_double(double v);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// log verbosity is controlled by the COANET_LOG environment variable
// (quiet|info|debug); everything else about a run flows through flags.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace coanet
