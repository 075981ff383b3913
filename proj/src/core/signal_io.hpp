#pragma once

#include <string>

#include "grid.hpp"
#include "wigner.hpp"

namespace wigmd {

// Two-column complex sample format with a header naming N and L. Values are
// printed with %.17g, so save/load round-trips are bit-exact.
std::string signal_to_text(const Signal& f);
Signal signal_from_text(const std::string& text);
void save_signal(const std::string& path, const Signal& f);
Signal load_signal(const std::string& path);

// Portable text export of a phase-space field (header plus re,im rows in
// row-major order).
std::string field_to_text(const Field2D& f);
void save_field(const std::string& path, const Field2D& f);

}  // namespace wigmd
