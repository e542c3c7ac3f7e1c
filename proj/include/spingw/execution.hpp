#pragma once

namespace spingw {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path is kept for testing and benchmarking.
enum class Exec { serial, parallel };

} // namespace spingw
