#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularGram : Error {
  using Error::Error;
};
struct NegativeIndex : Error {
  using Error::Error;
};
struct BadIndex : Error {
  using Error::Error;
};
struct ZeroRank : Error {
  using Error::Error;
};
struct ZeroNormalizer : Error {
  using Error::Error;
};
struct WindowTooSmall : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct DegenerateVector : Error {
  using Error::Error;
};
struct InvalidMukaiData : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace k3
