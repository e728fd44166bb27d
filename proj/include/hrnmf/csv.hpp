#ifndef HRNMF_CSV_HPP
#define HRNMF_CSV_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hrnmf {

// Malformed or inconsistent input data. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column, or throws DataError.
  std::size_t column(std::string_view name) const;
};

// RFC 4180 style reader: quoted fields may contain the delimiter, doubled
// quotes and newlines. CRLF line endings are accepted. Every row must have
// the header's field count.
Table parse_delimited(std::string_view text, char delimiter);

// Reads a file, picking tab as delimiter when the header line contains a tab
// and comma otherwise.
Table read_delimited(const std::string& path);

// Quote a field only when it needs it.
std::string csv_escape(std::string_view field, char delimiter = ',');
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter = ',');

// Replace every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Shortest decimal representation that round-trips.
std::string format_double(double value);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

}  // namespace hrnmf

#endif  // HRNMF_CSV_HPP
