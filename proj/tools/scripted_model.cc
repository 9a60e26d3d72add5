// Serves a ScriptedModel (or a toy lexicon) over the line protocol on
// stdin/stdout. Stands in for a real model process in tests and demos.

#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "leapt/gateway.h"
#include "leapt/toy_language.h"
#include "leapt/wire.h"

int main(int argc, char** argv) {
  CLI::App app{"line-protocol model stub", "leapt-scripted-model"};
  std::string script, lexicon;
  bool variants = false;
  auto* script_opt = app.add_option("--script", script, "ScriptedModel JSON");
  app.add_option("--lexicon", lexicon, "serve a toy lexicon instead")->excludes(script_opt);
  app.add_flag("--variants", variants, "toy synonym variants");
  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<leapt::TranslationModel> model;
  leapt::BoundaryClassifier* classifier = nullptr;
  try {
    if (!script.empty()) {
      auto scripted = std::make_unique<leapt::ScriptedModel>(leapt::ScriptedModel::load(script));
      classifier = scripted.get();
      model = std::move(scripted);
    } else if (!lexicon.empty()) {
      model = std::make_unique<leapt::ToyModel>(leapt::load_toy_lexicon(lexicon), variants);
    } else {
      std::cerr << "need --script or --lexicon\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    std::cout << leapt::wire::handle_request_line(line, model.get(), classifier) << '\n'
              << std::flush;
  }
  return 0;
}
