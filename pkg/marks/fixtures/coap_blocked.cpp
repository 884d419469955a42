#include <memory>

#include "stl_sentry/marks.hpp"

using namespace stl_sentry;

int main()
{
  vector<std::auto_ptr<int> > v;
  return 0;
}
