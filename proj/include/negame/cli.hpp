#pragma once

namespace negame {

// Full command-line driver. Exit codes: 0 = yes/verified, 1 = no/rejected,
// 2 = usage or input error.
int run(int argc, const char* const* argv);

}  // namespace negame
