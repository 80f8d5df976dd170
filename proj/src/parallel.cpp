#include "holderlab/parallel.hpp"

namespace holderlab {

namespace {

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<unsigned> g_threads{default_threads()};

}  // namespace

void set_thread_count(unsigned count) { g_threads.store(count == 0 ? default_threads() : count); }

unsigned thread_count() { return g_threads.load(); }

}  // namespace holderlab
