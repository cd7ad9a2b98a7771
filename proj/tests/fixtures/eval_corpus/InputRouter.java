package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JCheckBox;
import javax.swing.JComboBox;
import javax.swing.JTextField;

public class InputRouter implements ActionListener {
    public void actionPerformed(ActionEvent e) {
        Object target = e.getSource();
        if (target instanceof JTextField) {
            form.submit();
        } else if (target instanceof JCheckBox) {
            form.toggle();
        } else if (target instanceof JComboBox) {
            form.choose();
        }
    }
}
