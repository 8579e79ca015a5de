#pragma once

#include <cstdint>

namespace qca {

// Program-register content of one site. Empty plus the four commands.
enum class Command : std::uint8_t { E = 0, L = 1, R = 2, S = 3, G = 4 };

// Pointer-register content of one site. Absent, or present with the
// internal qubit in state 0 or 1.
enum class PointerState : std::uint8_t { Absent = 0, P0 = 1, P1 = 2 };

constexpr int kQubitDim = 2;
constexpr int kPointerDim = 3;
constexpr int kProgramDim = 5;
constexpr int kSiteDim = kQubitDim * kPointerDim * kProgramDim;  // 30
constexpr int kRegisterDim = kQubitDim * kPointerDim;            // 6, site sans program

// Decomposed site label.
struct SiteBasis {
  std::uint8_t qubit;    // 0 or 1
  PointerState pointer;  // Absent, P0, P1
  Command program;       // E, L, R, S, G

  friend bool operator==(const SiteBasis&, const SiteBasis&) = default;
};

// Mixed-radix index, program fastest: index = qubit*15 + pointer*5 + program.
constexpr std::uint8_t encode_site(const SiteBasis& s) {
  return static_cast<std::uint8_t>(s.qubit * (kPointerDim * kProgramDim) +
                                   static_cast<int>(s.pointer) * kProgramDim +
                                   static_cast<int>(s.program));
}

constexpr SiteBasis decode_site(std::uint8_t index) {
  return SiteBasis{
      static_cast<std::uint8_t>(index / (kPointerDim * kProgramDim)),
      static_cast<PointerState>((index / kProgramDim) % kPointerDim),
      static_cast<Command>(index % kProgramDim),
  };
}

// Register part (qubit, pointer) of a site index, range 0..5.
constexpr std::uint8_t site_register(std::uint8_t index) {
  return static_cast<std::uint8_t>(index / kProgramDim);
}

constexpr Command site_command(std::uint8_t index) {
  return static_cast<Command>(index % kProgramDim);
}

constexpr std::uint8_t make_site(std::uint8_t reg, Command c) {
  return static_cast<std::uint8_t>(reg * kProgramDim + static_cast<int>(c));
}

char command_char(Command c);
Command command_from_char(char c);  // throws LayoutError on anything outside LRSGE

// Commands that may occupy a program register in an initial layout (L, R, S, G).
bool is_real_command(Command c);

}  // namespace qca
