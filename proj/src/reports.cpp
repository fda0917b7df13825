// SPDX-License-Identifier: Apache-2.0
#include "playclass/reports.hpp"

#include "playclass/csv.hpp"
#include "playclass/numfmt.hpp"

namespace playclass {

void write_report_header(std::ostream& out, std::string_view title, std::uint64_t seed) {
    out << "# " << title << '\n' << "# seed=" << seed << '\n';
}

void write_confusion_csv(const ConfusionMatrix& cm, std::ostream& out) {
    out << "true\\pred";
    for (const auto& l : cm.labels) out << ',' << csv::escape(l);
    out << '\n';
    for (std::size_t i = 0; i < cm.labels.size(); ++i) {
        out << csv::escape(cm.labels[i]);
        for (auto c : cm.counts[i]) out << ',' << c;
        out << '\n';
    }
}

void write_class_report_csv(const ClassReport& report, std::ostream& out) {
    out << "category,TP,TN,FP,FN,TPR,FNR,precision,recall,f1-score,support\n";
    for (const auto& m : report.classes) {
        out << csv::escape(m.label) << ',' << m.tp << ',' << m.tn << ',' << m.fp << ',' << m.fn << ','
            << format_fixed(m.tpr, 4) << ',' << format_fixed(m.fnr, 4) << ','
            << format_fixed(m.precision, 4) << ',' << format_fixed(m.recall, 4) << ','
            << format_fixed(m.f1, 4) << ',' << m.support << '\n';
    }
    out << "# accuracy=" << format_fixed(report.accuracy, 4)
        << " macro_precision=" << format_fixed(report.macro_precision, 4)
        << " macro_recall=" << format_fixed(report.macro_recall, 4)
        << " macro_f1=" << format_fixed(report.macro_f1, 4) << " total=" << report.total << '\n';
}

void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out) {
    out << "x,mean,lo,hi\n";
    for (const auto& p : curve) {
        out << p.x << ',' << format_real(p.mean) << ',' << format_real(p.lo) << ','
            << format_real(p.hi) << '\n';
    }
}

}  // namespace playclass
