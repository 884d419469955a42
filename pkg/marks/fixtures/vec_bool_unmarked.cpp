#include "stl_sentry/marks.hpp"

using namespace stl_sentry;

int main()
{
  vector<bool> b;
  b.push_back( true );
  return 0;
}
