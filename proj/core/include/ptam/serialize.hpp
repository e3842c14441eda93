// serialize.hpp — line-oriented text formats for tile systems and assemblies.
//
// Exact placements are written as the Phi_n-reduced integer coefficient
// vector of the center, never as floats, so files are canonical: saving the
// same object twice yields byte-identical text.  Assembly files embed the
// tile system followed by the non-seed tiles in attachment order; loading
// replays the attachments, so a file that parses also validates.

#pragma once

#include <memory>
#include <string>

#include "ptam/tam.hpp"

namespace ptam {

std::string save_system(const TileSystem& sys);
TileSystem load_system(const std::string& text);

std::string save_assembly(const Assembly& a);

// Owns the system so the assembly's back-pointer stays valid.
struct AssemblyDoc {
    std::unique_ptr<TileSystem> system;
    std::unique_ptr<Assembly> assembly;
};
AssemblyDoc load_assembly(const std::string& text);

// Single placement line body (shared by system seeds and assembly tiles).
std::string placement_to_text(const Placement& p);
Placement placement_from_text(int n, const std::string& body);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ptam
