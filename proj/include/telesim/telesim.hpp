// Copyright 2026 The Telesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELESIM_TELESIM_HPP_
#define TELESIM_TELESIM_HPP_

#include "telesim/circuit.hpp"
#include "telesim/coef_expr.hpp"
#include "telesim/dsl/lexer.hpp"
#include "telesim/dsl/parser.hpp"
#include "telesim/dsl/serializer.hpp"
#include "telesim/elements.hpp"
#include "telesim/evaluator.hpp"
#include "telesim/lower.hpp"
#include "telesim/mode_expr.hpp"
#include "telesim/numeric.hpp"
#include "telesim/protocols.hpp"
#include "telesim/report.hpp"
#include "telesim/scalar.hpp"
#include "telesim/verify/bogoliubov.hpp"
#include "telesim/verify/causality.hpp"
#include "telesim/verify/covariance.hpp"
#include "telesim/verify/limits.hpp"
#include "telesim/verify/selectivity.hpp"

#endif  // TELESIM_TELESIM_HPP_
