#pragma once

#include <string>

namespace spreadpc {

enum class Model { trees, animals };

// "lt" / "la", the spellings used on the command line and in census files.
std::string model_tag(Model model);
Model parse_model(const std::string& tag);

}  // namespace spreadpc
