#include "aweno/characteristic.hpp"

#include <string>

namespace aweno {

std::string_view to_string(LcdBackend b) {
  switch (b) {
    case LcdBackend::ch_ri: return "ch_ri";
    case LcdBackend::ch_con: return "ch_con";
    case LcdBackend::cp_con: return "cp_con";
  }
  return "?";
}

LcdBackend parse_backend(std::string_view token) {
  if (token == "ch_ri" || token == "CH-RI") return LcdBackend::ch_ri;
  if (token == "ch_con" || token == "CH-CON") return LcdBackend::ch_con;
  if (token == "cp_con" || token == "CP-CON") return LcdBackend::cp_con;
  throw Error(ErrorKind::config, "unknown LCD backend '" + std::string(token) + "'");
}

}  // namespace aweno
