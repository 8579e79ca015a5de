#include "qca/site.hpp"

#include <string>

#include "qca/errors.hpp"

namespace qca {

char command_char(Command c) {
  switch (c) {
    case Command::E: return 'e';
    case Command::L: return 'L';
    case Command::R: return 'R';
    case Command::S: return 'S';
    case Command::G: return 'G';
  }
  throw LayoutError("invalid command value " + std::to_string(static_cast<int>(c)));
}

Command command_from_char(char c) {
  switch (c) {
    case 'e': return Command::E;
    case 'L': return Command::L;
    case 'R': return Command::R;
    case 'S': return Command::S;
    case 'G': return Command::G;
    default: break;
  }
  throw LayoutError(std::string("invalid command character '") + c + "', expected one of eLRSG");
}

bool is_real_command(Command c) { return c != Command::E; }

}  // namespace qca
