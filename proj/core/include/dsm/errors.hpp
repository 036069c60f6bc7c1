#pragma once

#include <stdexcept>
#include <string>

namespace dsm {

// Base class for all library errors. Every failure mode gets its own type so
// callers can react to the specific condition (resample on a modulus tie,
// report a parabolic input, and so on) without string matching.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix dimension outside the supported range [2, 8].
class DimOutOfRange : public Error {
public:
    using Error::Error;
};

// Two eigenvalue moduli closer than the tie tolerance; the strict modulus
// ordering needed for measure construction is undefined. Monte Carlo loops
// catch this, skip the sample, and count it.
class ModulusTie : public Error {
public:
    using Error::Error;
};

// Singular or numerically singular matrix input.
class Singular : public Error {
public:
    using Error::Error;
};

// An iteration (QR eigensolver, Jacobi sweep, Newton polish) exhausted its
// budget without meeting its residual target.
class NoConvergence : public Error {
public:
    using Error::Error;
};

// Columns expected to be orthonormal are not, beyond tolerance.
class NotOrthonormal : public Error {
public:
    using Error::Error;
};

// Moduli list not strictly descending and positive.
class NotDescending : public Error {
public:
    using Error::Error;
};

// 2x2 input with |trace| = 2 after determinant normalization. The invariant
// measure is not given by a formula in this measure-zero case, so it is
// reported rather than fabricated.
class Parabolic : public Error {
public:
    using Error::Error;
};

// Parameter outside its admissible range (a = 1 in the disk conjugacy,
// epsilon outside (0, 1/2pi] for the circle family, ...).
class BadParameter : public Error {
public:
    using Error::Error;
};

// Point outside the support of a density or CDF.
class OutOfSupport : public Error {
public:
    using Error::Error;
};

// Scalar multiple of the identity passed where the construction requires a
// matrix with distinguishable directions.
class ScalarInput : public Error {
public:
    using Error::Error;
};

// Newton derivative below threshold near a saddle-node; the caller should
// switch to the two-variable boundary system.
class DerivativeVanishing : public Error {
public:
    using Error::Error;
};

}  // namespace dsm
