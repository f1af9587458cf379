#include "spreadpc/errors.hpp"
#include "spreadpc/kernels.hpp"
#include "spreadpc/model.hpp"

namespace spreadpc {

std::string model_tag(Model model) { return model == Model::trees ? "lt" : "la"; }

Model parse_model(const std::string& tag) {
  if (tag == "lt" || tag == "trees") return Model::trees;
  if (tag == "la" || tag == "animals") return Model::animals;
  throw InvalidArgument("unknown model '" + tag + "' (expected lt or la)");
}

std::string norm_tag(Norm norm) { return norm == Norm::sup ? "linf" : "l2"; }

Norm parse_norm(const std::string& tag) {
  if (tag == "linf" || tag == "sup") return Norm::sup;
  if (tag == "l2" || tag == "euclidean") return Norm::euclidean;
  throw InvalidArgument("unknown norm '" + tag + "' (expected linf or l2)");
}

}  // namespace spreadpc
