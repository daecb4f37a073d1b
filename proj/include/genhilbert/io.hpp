#ifndef GENHILBERT_IO_HPP
#define GENHILBERT_IO_HPP

#include "genhilbert/kernel.hpp"
#include "genhilbert/sequence.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genhilbert
{

class FormatError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// printf "%.17g": round-trips every double.
std::string format_real(double value);

/// One row per line, entries separated by commas.
std::string section_to_csv(const Section<double> &section);
/// `{"size":N,"entries":[...row-major...]}`.
std::string section_to_json(const Section<double> &section);

Section<double> section_from_csv(std::string_view text);
Section<double> section_from_json(std::string_view text);

/// Sequence file: one value per line, optional leading `# p=<value>` header.
struct SequenceFile
{
    SequenceVector sequence;
    std::optional<std::string> p_header;
};

SequenceFile parse_sequence_csv(std::string_view text);
std::string sequence_to_csv(const Vector<double> &values,
                            const std::optional<std::string> &p_header = {});

/// Whole file as a string; throws std::runtime_error if unreadable.
std::string read_file(const std::string &path);

} // namespace genhilbert

#endif
