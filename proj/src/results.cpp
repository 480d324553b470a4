#include "hetnet/results.hpp"

namespace hetnet {

const char* to_string(Metric m) {
    switch (m) {
        case Metric::assoc: return "assoc";
        case Metric::sinr: return "sinr";
        case Metric::rate: return "rate";
        default: return "ee";
    }
}

const char* to_string(Engine e) {
    return e == Engine::analytic ? "analytic" : "mc";
}

Metric metric_from_string(const std::string& s) {
    if (s == "assoc") return Metric::assoc;
    if (s == "sinr") return Metric::sinr;
    if (s == "rate") return Metric::rate;
    if (s == "ee") return Metric::ee;
    throw std::invalid_argument("unknown metric: " + s);
}

Engine engine_from_string(const std::string& s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "mc") return Engine::mc;
    throw std::invalid_argument("unknown engine: " + s);
}

}  // namespace hetnet
