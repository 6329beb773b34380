#pragma once

#include <iosfwd>

namespace bitalign {

/// Entry point of the `bitalign` tool. Returns 0 on success, 1 when input
/// could not be processed or some pair failed, 2 on usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bitalign
