#pragma once

#include <deque>
#include <stdexcept>

// Test stream with pre-scripted draws, used to pin sampler outputs exactly.
struct ScriptedStream {
    std::deque<double> exponentials;
    std::deque<double> normals;
    std::deque<double> uniforms;

    double exponential(double) {
        if (exponentials.empty()) throw std::runtime_error("scripted stream: out of exponentials");
        const double value = exponentials.front();
        exponentials.pop_front();
        return value;
    }

    double normal() {
        if (normals.empty()) throw std::runtime_error("scripted stream: out of normals");
        const double value = normals.front();
        normals.pop_front();
        return value;
    }

    double uniform() {
        if (uniforms.empty()) throw std::runtime_error("scripted stream: out of uniforms");
        const double value = uniforms.front();
        uniforms.pop_front();
        return value;
    }
};
