#include "genhilbert/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

namespace genhilbert
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
    {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, std::size_t line)
{
    const std::string text(trim(token));
    if (text.empty())
    {
        throw FormatError("line " + std::to_string(line) + ": empty value");
    }
    std::size_t used = 0;
    double value     = 0.0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used != text.size())
    {
        throw FormatError("line " + std::to_string(line) + ": cannot parse '" +
                          text + "' as a number");
    }
    return value;
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto end = text.find('\n', start);
        const auto len = (end == std::string_view::npos ? text.size() : end) - start;
        lines.push_back(text.substr(start, len));
        if (end == std::string_view::npos)
        {
            break;
        }
        start = end + 1;
    }
    return lines;
}

} // namespace

std::string format_real(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string section_to_csv(const Section<double> &section)
{
    std::string out;
    for (Index n = 0; n < section.rows(); ++n)
    {
        for (Index k = 0; k < section.cols(); ++k)
        {
            if (k > 0)
            {
                out += ',';
            }
            out += format_real(section(n, k));
        }
        out += '\n';
    }
    return out;
}

std::string section_to_json(const Section<double> &section)
{
    std::string out = "{\"size\":" + std::to_string(section.rows()) + ",\"entries\":[";
    for (Index i = 0; i < section.size(); ++i)
    {
        if (i > 0)
        {
            out += ',';
        }
        out += format_real(section.data()[i]);
    }
    out += "]}";
    return out;
}

Section<double> section_from_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const auto line = trim(lines[i]);
        if (line.empty())
        {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        while (true)
        {
            const auto comma = line.find(',', start);
            row.push_back(parse_real(line.substr(start, comma - start), i + 1));
            if (comma == std::string_view::npos)
            {
                break;
            }
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    const Index size = static_cast<Index>(rows.size());
    Section<double> out(size, size);
    for (Index n = 0; n < size; ++n)
    {
        if (static_cast<Index>(rows[n].size()) != size)
        {
            throw FormatError("section CSV is not square");
        }
        for (Index k = 0; k < size; ++k)
        {
            out(n, k) = rows[n][k];
        }
    }
    return out;
}

Section<double> section_from_json(std::string_view text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw FormatError(std::string("section JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("size") || !doc.contains("entries") ||
        !doc["size"].is_number_integer() || !doc["entries"].is_array())
    {
        throw FormatError("section JSON needs integer `size` and array `entries`");
    }
    const Index size   = doc["size"].get<Index>();
    const auto &values = doc["entries"];
    if (size < 0 || static_cast<Index>(values.size()) != size * size)
    {
        throw FormatError("section JSON: entries length is not size^2");
    }
    Section<double> out(size, size);
    for (Index i = 0; i < size * size; ++i)
    {
        out.data()[i] = values[static_cast<std::size_t>(i)].get<double>();
    }
    return out;
}

SequenceFile parse_sequence_csv(std::string_view text)
{
    SequenceFile file;
    std::vector<double> values;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const auto line = trim(lines[i]);
        if (line.empty())
        {
            continue;
        }
        if (line.front() == '#')
        {
            const auto body = trim(line.substr(1));
            if (values.empty() && !file.p_header && body.substr(0, 2) == "p=")
            {
                file.p_header = std::string(trim(body.substr(2)));
                continue;
            }
            throw FormatError("line " + std::to_string(i + 1) +
                              ": only a leading `# p=<value>` header is allowed");
        }
        values.push_back(parse_real(line, i + 1));
    }
    Vector<double> v(static_cast<Index>(values.size()));
    bool nonneg = true;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        v[static_cast<Index>(i)] = values[i];
        nonneg                   = nonneg && values[i] >= 0.0;
    }
    file.sequence = SequenceVector(std::move(v), nonneg);
    return file;
}

std::string sequence_to_csv(const Vector<double> &values,
                            const std::optional<std::string> &p_header)
{
    std::string out;
    if (p_header)
    {
        out += "# p=" + *p_header + "\n";
    }
    for (Index i = 0; i < values.size(); ++i)
    {
        out += format_real(values[i]);
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot read file '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace genhilbert
