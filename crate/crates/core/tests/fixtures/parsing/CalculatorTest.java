import junit.framework.TestCase;

public class CalculatorTest extends TestCase {

    private Calculator calc;

    public void testAddsNumbers() {
        calc.add(1, 2);
        assertEquals(3, calc.total());
    }

    public void helperOnly() {
        calc.reset();
    }

    private Calculator buildFixture() {
        return new Calculator();
    }
}
