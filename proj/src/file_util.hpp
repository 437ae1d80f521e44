#pragma once

#include "qocd/error.hpp"

#include <filesystem>
#include <fstream>
#include <string>

namespace qocd::detail {

inline std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path.string() + "'");
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    return out;
}

inline void check_written(const std::ofstream& out, const std::filesystem::path& path)
{
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

} // namespace qocd::detail
