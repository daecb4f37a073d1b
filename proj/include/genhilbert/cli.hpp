#ifndef GENHILBERT_CLI_HPP
#define GENHILBERT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace genhilbert::cli
{

inline constexpr int exit_ok           = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_usage_error  = 2;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace genhilbert::cli

#endif
