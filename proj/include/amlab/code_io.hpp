// Plain-text code files.
//
// One vertex per line: a digit string of length D (Hamming) or a
// comma-separated sorted subset of {1..N} (Johnson). A line may carry a
// rational weight as "p/q<TAB>vertex". '#' starts a comment; a leading
// "# scheme: H(24,2)" directive names the scheme when the caller does not.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "amlab/spectra.hpp"

namespace amlab {

/// Reads a code. `scheme` may be null when the file has a scheme directive.
CodeVector read_code(std::istream& in, SchemePtr scheme, const std::string& source = "<input>");
CodeVector load_code(const std::string& path, SchemePtr scheme = nullptr);

/// Scheme named by the file's directive, if any.
std::optional<SchemeSpec> peek_scheme(const std::string& path);

void write_code(std::ostream& out, const CodeVector& chi, const std::string& comment = "");
void save_code(const std::string& path, const CodeVector& chi, const std::string& comment = "");

}  // namespace amlab
