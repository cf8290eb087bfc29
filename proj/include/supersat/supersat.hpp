#pragma once

#include "supersat/acceptance.hpp"
#include "supersat/bipartite_graph.hpp"
#include "supersat/bounds.hpp"
#include "supersat/difference_sets.hpp"
#include "supersat/finite_field.hpp"
#include "supersat/group.hpp"
#include "supersat/mors.hpp"
#include "supersat/oracle.hpp"
#include "supersat/parallel.hpp"
