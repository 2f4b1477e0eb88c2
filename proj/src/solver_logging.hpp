#pragma once

#include <glog/logging.h>

#include <mutex>

namespace mixbound::oracle::detail {

// L-BFGS restarts on curvature failures are routine for the oracles; keep the
// solver's warnings off stderr.
inline void quiet_solver_logging() {
  static std::once_flag once;
  std::call_once(once, [] { FLAGS_minloglevel = google::GLOG_ERROR; });
}

}  // namespace mixbound::oracle::detail
