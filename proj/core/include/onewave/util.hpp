#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace onewave {

using WarningSink = std::function<void(const std::string&)>;

// Default sink writes to stderr. Passing an empty function restores it.
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

// Threads used by parallel_for; 0 selects hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, n), split over thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace onewave
