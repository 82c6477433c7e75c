#ifndef STOCHEQ_STOCHEQ_HPP
#define STOCHEQ_STOCHEQ_HPP

#include <stocheq/closed_form.hpp>
#include <stocheq/determinant.hpp>
#include <stocheq/equilibrium.hpp>
#include <stocheq/graph_walk.hpp>
#include <stocheq/oracle.hpp>
#include <stocheq/reducibility.hpp>

#endif  // STOCHEQ_STOCHEQ_HPP
