// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace playclass::csv {

/// Streaming reader for comma-delimited, double-quote-escaped CSV.
/// Quoted fields may contain commas, doubled quotes and line breaks.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. CRLF and LF both end a record.
    std::optional<std::vector<std::string>> next();

    /// 1-based physical line on which the last returned record started.
    std::size_t line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

/// Quotes `field` if it contains a comma, quote or line break.
std::string escape(const std::string& field);

}  // namespace playclass::csv
