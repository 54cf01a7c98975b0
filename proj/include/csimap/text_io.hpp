// csimap - CSI map learning and pilot mitigation for indoor massive MIMO
// Copyright (C) 2026 The csimap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace csimap {

// Shortest form that round-trips exactly (%.17g).
std::string format_exact(double value);

// Line-oriented tokenizer for the flat text formats. Blank lines are skipped;
// every failure throws ParseError carrying the current line number.
class LineReader {
public:
    LineReader(std::istream &in, std::string source);

    // Tokens of the next non-blank line; throws ParseError at end of input.
    std::vector<std::string> next_tokens(const char *expected);

    // Like next_tokens but returns false at end of input.
    bool try_next(std::vector<std::string> &tokens);

    bool has_more();

    [[noreturn]] void fail(const std::string &what) const;

    double parse_double(const std::string &token, const char *field) const;
    std::uint64_t parse_count(const std::string &token, const char *field) const;
    std::int64_t parse_int(const std::string &token, const char *field) const;

    std::size_t line() const noexcept { return line_; }

private:
    bool read_nonblank(std::string &out);

    std::istream &in_;
    std::string source_;
    std::size_t line_ = 0;
    bool peeked_ = false;
    std::string peek_;
};

std::vector<std::string> split_whitespace(std::string_view line);

} // namespace csimap
