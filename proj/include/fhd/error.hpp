// SPDX-License-Identifier: MIT
/**
 * @file error.hpp
 * @brief Exception types shared by every fhd module.
 *
 * DomainError signals invalid inputs (bad parameters, grids, fields).
 * NumericalError signals a failure of an otherwise valid computation
 * (non-convergence, positivity loss, blow-up).
 */

#pragma once

#include <stdexcept>
#include <string>

namespace fhd {

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fhd
