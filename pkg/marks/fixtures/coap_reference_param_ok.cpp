#include <memory>

#include "stl_sentry/marks.hpp"

bool less_by_value( const std::auto_ptr<int>& a, const std::auto_ptr<int>& b )
{
  return *a < *b;
}

int main()
{
  return 0;
}
