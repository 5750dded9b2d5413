// Decodes the reference rocket, prints its build sheet and flies it in the three wind
// conditions. Optionally pass a materials JSON as the first argument.

#include <iostream>

#include <rocketqd/experiment/report.hpp>
#include <rocketqd/sim/evaluate.hpp>

int main(int argc, char** argv)
{
    using namespace rocketqd;
    ModelConfig cfg;
    if (argc > 1)
        cfg.materials = load_materials(argv[1]);

    const Genome g = reference_genome();
    write_design_report(std::cout, g, cfg);

    const auto seeds = derive_wind_seeds(42, 0, 0);
    const Evaluation ev = evaluate(g, seeds, cfg);
    for (std::size_t i = 0; i < 3; ++i)
        std::cout << "apogee[" << i << "] (wind " << cfg.winds[i].mean << " m/s): " << ev.altitudes[i] << " m\n";
    std::cout << "fitness: " << ev.fitness << "\nmeasure_x: " << ev.measure_x << "\n";
    return 0;
}
