#ifndef QUADVERTEX_TOOLS_CLI_HPP
#define QUADVERTEX_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace quadvertex::cli {

// Exit codes: 0 pass, 1 verification failed, 2 usage or invalid input, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t h);

} // namespace quadvertex::cli

#endif
