#pragma once

#include <string>
#include <string_view>

#include "bpmnc/codegen.hpp"

namespace bpmnc {

// JSON rendering of a contract image. Masks are hex strings at the image
// width. read_manifest(write_manifest(img)) == img.
std::string write_manifest(const ContractImage& image);

// Throws Error(MalformedManifest).
ContractImage read_manifest(std::string_view json_text);

}  // namespace bpmnc
