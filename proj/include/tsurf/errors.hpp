#pragma once

#include <stdexcept>

namespace tsurf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSurface : Error {
  using Error::Error;
};
struct ValidationFailed : Error {
  using Error::Error;
};
struct DegenerateBasis : Error {
  using Error::Error;
};
struct DisconnectedSurface : Error {
  using Error::Error;
};
struct UnsupportedTable : Error {
  using Error::Error;
};
struct MeshTooCoarse : Error {
  using Error::Error;
};
struct NonTermination : Error {
  using Error::Error;
};
struct StartTooClose : Error {
  using Error::Error;
};
struct IrrationalSlope : Error {
  using Error::Error;
};
struct OrientationReversing : Error {
  using Error::Error;
};
struct TooFewSamples : Error {
  using Error::Error;
};
struct NonPositiveInput : Error {
  using Error::Error;
};
struct NonPositiveC : Error {
  using Error::Error;
};
struct KTooLarge : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace tsurf
