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

#include "csimap/text_io.hpp"

#include "csimap/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>

namespace csimap {

std::string format_exact(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> split_whitespace(std::string_view line)
{
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
            ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r')
            ++pos;
        if (pos > start)
            tokens.emplace_back(line.substr(start, pos - start));
    }
    return tokens;
}

LineReader::LineReader(std::istream &in, std::string source) : in_(in), source_(std::move(source))
{
}

bool LineReader::read_nonblank(std::string &out)
{
    if (peeked_) {
        peeked_ = false;
        out = std::move(peek_);
        return true;
    }
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!split_whitespace(line).empty()) {
            out = std::move(line);
            return true;
        }
    }
    return false;
}

bool LineReader::try_next(std::vector<std::string> &tokens)
{
    std::string line;
    if (!read_nonblank(line))
        return false;
    tokens = split_whitespace(line);
    return true;
}

std::vector<std::string> LineReader::next_tokens(const char *expected)
{
    std::vector<std::string> tokens;
    if (!try_next(tokens))
        throw ParseError(source_, line_ + 1, std::string("unexpected end of input, expected ") +
                                                 expected);
    return tokens;
}

bool LineReader::has_more()
{
    if (peeked_)
        return true;
    std::string line;
    if (!read_nonblank(line))
        return false;
    peek_ = std::move(line);
    peeked_ = true;
    return true;
}

void LineReader::fail(const std::string &what) const { throw ParseError(source_, line_, what); }

double LineReader::parse_double(const std::string &token, const char *field) const
{
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE || std::isnan(v))
        fail(std::string("invalid number for ") + field + ": '" + token + "'");
    return v;
}

std::uint64_t LineReader::parse_count(const std::string &token, const char *field) const
{
    if (token.empty() || token[0] == '-' || token[0] == '+')
        fail(std::string("invalid count for ") + field + ": '" + token + "'");
    errno = 0;
    char *end = nullptr;
    const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
        fail(std::string("invalid count for ") + field + ": '" + token + "'");
    return v;
}

std::int64_t LineReader::parse_int(const std::string &token, const char *field) const
{
    errno = 0;
    char *end = nullptr;
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
        fail(std::string("invalid integer for ") + field + ": '" + token + "'");
    return v;
}

} // namespace csimap
