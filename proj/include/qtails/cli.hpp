#pragma once
#include <string>
#include <vector>

namespace qtails {

// exit codes: 0 all pass, 1 verification failure, 2 usage or parse error,
// 3 numeric instability
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace qtails
