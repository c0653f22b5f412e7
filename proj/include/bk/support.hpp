#pragma once

#include <charconv>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bk {

/// Machine-readable failure codes. The CLI maps these onto its exit-code
/// classes: usage/parse/io, validation/precondition, tolerance breach.
enum class errc {
  parse_error,
  unknown_identifier,
  eval_domain,
  io_error,
  bad_config,
  degenerate_input,
  rank_deficient,
  null_degeneracy,
  causal_mismatch,
  surface_mismatch,
  domain_violation,
  quadrature_failure,
  frame_degeneracy,
  standing_assumption,
  cartan_dependence,
  pseudo_arc_violation,
  constancy_violation,
  kappa_underdetermined,
  tolerance_breach,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse_error: return "parse_error";
    case errc::unknown_identifier: return "unknown_identifier";
    case errc::eval_domain: return "eval_domain";
    case errc::io_error: return "io_error";
    case errc::bad_config: return "bad_config";
    case errc::degenerate_input: return "degenerate_input";
    case errc::rank_deficient: return "rank_deficient";
    case errc::null_degeneracy: return "null_degeneracy";
    case errc::causal_mismatch: return "causal_mismatch";
    case errc::surface_mismatch: return "surface_mismatch";
    case errc::domain_violation: return "domain_violation";
    case errc::quadrature_failure: return "quadrature_failure";
    case errc::frame_degeneracy: return "frame_degeneracy";
    case errc::standing_assumption: return "standing_assumption";
    case errc::cartan_dependence: return "cartan_dependence";
    case errc::pseudo_arc_violation: return "pseudo_arc_violation";
    case errc::constancy_violation: return "constancy_violation";
    case errc::kappa_underdetermined: return "kappa_underdetermined";
    case errc::tolerance_breach: return "tolerance_breach";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  error(errc code, std::string message, double at_param)
      : std::runtime_error(std::move(message)), code_(code), at_(at_param) {}

  errc code() const noexcept { return code_; }
  std::optional<double> at() const noexcept { return at_; }

 private:
  errc code_;
  std::optional<double> at_;
};

/// Shortest round-trip decimal form; locale-independent. Used everywhere a
/// float reaches CSV or JSON so identical runs produce identical bytes.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool parallel_disabled() {
  static const bool disabled = [] {
    const char* v = std::getenv("BK_NO_PARALLEL");
    return v != nullptr && v[0] == '1';
  }();
  return disabled;
}

/// Chunked parallel loop over [0, n). Falls back to serial when the grid is
/// small or BK_NO_PARALLEL=1. The callable must be safe to run concurrently
/// on disjoint indices; the first exception thrown is rethrown to the caller.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (n < 512 || hw < 2 || parallel_disabled()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned workers = hw;
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    if (lo >= n) break;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bk
