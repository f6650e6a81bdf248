#pragma once

#include <string>

namespace bench {

// JSON document with `records` records of `fields` fields under one array,
// plus a nested child group in each record.
inline std::string record_document(int records, int fields) {
  std::string out = "{\"meta\":{\"source\":\"bench\",\"count\":\"" + std::to_string(records) + "\"},\"items\":[";
  for (int r = 0; r < records; ++r) {
    if (r > 0) out += ',';
    out += '{';
    for (int f = 0; f < fields; ++f) {
      out += "\"f" + std::to_string(f) + "\":\"value " + std::to_string(r * fields + f) + "\",";
    }
    out += "\"tags\":[{\"t\":\"a\"},{\"t\":\"b\"}]}";
  }
  return out + "]}";
}

}  // namespace bench
