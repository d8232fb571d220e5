#ifndef SU11_SU11_HPP
#define SU11_SU11_HPP

#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/oracles.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/sl_geometry.hpp"
#include "su11/sr_geometry.hpp"
#include "su11/types.hpp"
#include "su11/version.hpp"

#endif  // SU11_SU11_HPP
