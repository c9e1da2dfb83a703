#pragma once

#include "sasaki/calculus.hpp"
#include "sasaki/chart.hpp"
#include "sasaki/conformal.hpp"
#include "sasaki/contact.hpp"
#include "sasaki/error.hpp"
#include "sasaki/jet.hpp"
#include "sasaki/models.hpp"
#include "sasaki/report.hpp"
#include "sasaki/soliton.hpp"
#include "sasaki/star_ricci.hpp"
#include "sasaki/suites.hpp"
#include "sasaki/tensor.hpp"
