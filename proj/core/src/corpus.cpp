#include "pwforge/corpus.hpp"

#include <fstream>
#include <stdexcept>

namespace pwf {

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"flat2", R"({
  "name": "flat2",
  "dim": 2,
  "task": "relations"
}
)"},
      {"flat3", R"({
  "name": "flat3",
  "dim": 3,
  "phi": {
    "1,2": "x3",
    "3,3": "x1^2"
  },
  "task": "relations"
}
)"},
      {"pp", R"({
  "name": "pp",
  "dim": 2,
  "phi": {
    "1,1": "x2^2"
  },
  "caps": {
    "x_degree": 4
  },
  "task": "killing"
}
)"},
      {"appB_case1", R"({
  "name": "appB_case1",
  "dim": 2,
  "upsilon": {
    "1": "2*x1+1",
    "2": "x2+3"
  },
  "task": "affine-sym"
}
)"},
      {"appB_case2", R"({
  "name": "appB_case2",
  "dim": 2,
  "upsilon": {
    "1": "2*x1+1",
    "2": "3"
  },
  "task": "affine-sym"
}
)"},
      {"appB_case3", R"({
  "name": "appB_case3",
  "dim": 2,
  "upsilon": {
    "1": "2*x1+1"
  },
  "task": "affine-sym"
}
)"},
      {"appB_case4", R"({
  "name": "appB_case4",
  "dim": 2,
  "upsilon": {
    "1": "2"
  },
  "task": "affine-sym"
}
)"},
      {"appB_flat", R"({
  "name": "appB_flat",
  "dim": 2,
  "task": "affine-sym"
}
)"},
      {"appB_generic", R"({
  "name": "appB_generic",
  "dim": 2,
  "upsilon": {
    "1": "7/4*x1^2-2*x1+5/3",
    "2": "-3*x2+1/2"
  },
  "task": "affine-sym"
}
)"},
      {"phi_exact", R"({
  "name": "phi_exact",
  "dim": 2,
  "phi": {
    "1,2": "1/2"
  },
  "task": "flatness"
}
)"},
      {"extra_alpha1", R"({
  "name": "extra_alpha1",
  "dim": 2,
  "alpha": "1",
  "c": "0",
  "task": "ambient"
}
)"},
      {"extra_alphax", R"({
  "name": "extra_alphax",
  "dim": 2,
  "alpha": "x1",
  "c": "5",
  "task": "ambient"
}
)"},
  };
  return entries;
}

int write_corpus(const std::string& dir) {
  int written = 0;
  for (const auto& e : corpus()) {
    std::ofstream out(dir + "/" + e.name + ".json",
                      std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write to " + dir);
    out << e.json;
    ++written;
  }
  return written;
}

}  // namespace pwf
