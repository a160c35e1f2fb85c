#pragma once

// Bundled worked-example problem files: flat bases in dimensions 2 and 3,
// the quadratic single-entry example with the nine-dimensional conformal
// symmetry algebra, the plane projective-change family at its special
// parameter values, an exact-modification instance, and two
// extra-modification instances for the four-dimensional ambient family.

#include <string>
#include <vector>

namespace pwf {

struct CorpusEntry {
  std::string name;  // file stem
  std::string json;  // full problem-file text
};

const std::vector<CorpusEntry>& corpus();

// Writes every entry as <dir>/<name>.json (byte-identical to the bundled
// text).  Returns the number of files written.
int write_corpus(const std::string& dir);

}  // namespace pwf
