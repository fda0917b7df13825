// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "playclass/evaluation.hpp"

namespace playclass {

/// Every report starts with "# <title>" and "# seed=<seed>" comment lines.
void write_report_header(std::ostream& out, std::string_view title, std::uint64_t seed);

/// Labeled square CSV: header "true\\pred,<labels...>", one row per true label.
void write_confusion_csv(const ConfusionMatrix& cm, std::ostream& out);

/// category,TP,TN,FP,FN,TPR,FNR,precision,recall,f1-score,support
void write_class_report_csv(const ClassReport& report, std::ostream& out);

/// x,mean,lo,hi
void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out);

}  // namespace playclass
